#include "arbor/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace arbor {

Permutation::Permutation(std::uint32_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), 0u);
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (std::uint32_t v : images) {
        if (v >= images.size() || seen[v])
            throw std::invalid_argument("Permutation: image table is not a bijection");
        seen[v] = true;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
}

Permutation Permutation::random(std::uint32_t degree, Rng& rng) {
    Permutation p(degree);
    for (std::uint32_t i = degree; i > 1; --i) {
        std::uint32_t j = static_cast<std::uint32_t>(rng.below(i));
        std::swap(p.img_[i - 1], p.img_[j]);
    }
    return p;
}

Permutation Permutation::from_cycle(std::uint32_t degree, const std::vector<std::uint32_t>& cycle) {
    Permutation p(degree);
    if (cycle.empty()) return p;
    std::vector<bool> seen(degree, false);
    for (std::uint32_t v : cycle) {
        if (v >= degree) throw std::invalid_argument("Permutation: cycle entry out of range");
        if (seen[v]) throw std::invalid_argument("Permutation: cycle has repeated entries");
        seen[v] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
        p.img_[cycle[i]] = cycle[(i + 1) % cycle.size()];
    return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (degree() != rhs.degree())
        throw std::invalid_argument("Permutation: degree mismatch in composition");
    Permutation out;
    out.img_.resize(degree());
    for (std::uint32_t i = 0; i < degree(); ++i) out.img_[i] = img_[rhs.img_[i]];
    return out;
}

Permutation Permutation::inverse() const {
    Permutation out;
    out.img_.resize(degree());
    for (std::uint32_t i = 0; i < degree(); ++i) out.img_[img_[i]] = i;
    return out;
}

bool Permutation::is_identity() const {
    for (std::uint32_t i = 0; i < degree(); ++i)
        if (img_[i] != i) return false;
    return true;
}

bool Permutation::is_full_cycle() const {
    if (img_.empty()) return false;
    std::uint32_t x = 0, steps = 0;
    do {
        x = img_[x];
        ++steps;
    } while (x != 0);
    return steps == degree();
}

std::vector<std::uint32_t> Permutation::cycle_lengths() const {
    std::vector<std::uint32_t> out;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        std::uint32_t len = 0, x = i;
        do {
            seen[x] = true;
            x = img_[x];
            ++len;
        } while (x != i);
        out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

bool Permutation::next_lex() { return std::next_permutation(img_.begin(), img_.end()); }

} // namespace arbor

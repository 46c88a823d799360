#include "arbor/wreath.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "arbor/parallel.hpp"
#include "json.hpp"

namespace arbor {

namespace {

// Prefix action table at the next level: given the table for level-i ranks and
// the level-i labels, produce the table on level-(i+1) ranks.
std::vector<std::uint64_t> advance_prefix(const std::vector<std::uint64_t>& table,
                                          const std::vector<Permutation>& labels,
                                          std::uint32_t deg) {
    std::vector<std::uint64_t> out(table.size() * deg);
    for (std::uint64_t r = 0; r < table.size(); ++r) {
        const std::uint64_t u = table[r];
        const Permutation& h = labels[u];
        for (std::uint32_t t = 0; t < deg; ++t) out[r * deg + t] = u * deg + h(t);
    }
    return out;
}

bigint factorial(std::uint32_t n) {
    bigint f = 1;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

bigint bigint_pow(const bigint& base, std::uint64_t exp) {
    bigint r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

} // namespace

WreathElement::WreathElement(const SphericalIndex& idx) : idx_(idx) {
    labels_.resize(idx.levels());
    for (std::size_t i = 0; i < idx.levels(); ++i)
        labels_[i].assign(idx.partial(i), Permutation(idx.degree(i)));
}

WreathElement WreathElement::from_labels(const SphericalIndex& idx,
                                         std::vector<std::vector<Permutation>> labels) {
    if (labels.size() != idx.levels())
        throw std::invalid_argument("WreathElement: wrong number of levels");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].size() != idx.partial(i))
            throw std::invalid_argument("WreathElement: wrong label count at level " +
                                        std::to_string(i + 1));
        for (const Permutation& p : labels[i])
            if (p.degree() != idx.degree(i))
                throw std::invalid_argument("WreathElement: wrong label degree at level " +
                                            std::to_string(i + 1));
    }
    WreathElement e(idx);
    e.labels_ = std::move(labels);
    return e;
}

WreathElement WreathElement::random(const SphericalIndex& idx, Rng& rng) {
    WreathElement e(idx);
    for (auto& level : e.labels_)
        for (auto& p : level) p = Permutation::random(p.degree(), rng);
    return e;
}

void WreathElement::require_same_index(const WreathElement& o) const {
    if (!(idx_ == o.idx_)) throw std::invalid_argument("WreathElement: spherical index mismatch");
}

LeafAddress WreathElement::act(const LeafAddress& v) const {
    if (v.path.size() != idx_.levels())
        throw std::invalid_argument("WreathElement::act: address has wrong length");
    LeafAddress out;
    out.path.resize(v.path.size());
    std::uint64_t rank = 0; // rank of the image prefix
    for (std::size_t i = 0; i < idx_.levels(); ++i) {
        if (v.path[i] >= idx_.degree(i))
            throw std::invalid_argument("WreathElement::act: address coordinate out of range");
        std::uint32_t u = labels_[i][rank](v.path[i]);
        out.path[i] = u;
        rank = rank * idx_.degree(i) + u;
    }
    return out;
}

WreathElement WreathElement::compose(const WreathElement& rhs) const {
    require_same_index(rhs);
    WreathElement out(idx_);
    // prefix[s] = rank of the image under *this of the level-i address of rank s
    std::vector<std::uint64_t> prefix{0};
    for (std::size_t i = 0; i < idx_.levels(); ++i) {
        const auto& la = labels_[i];
        const auto& lb = rhs.labels_[i];
        auto& lc = out.labels_[i];
        for (std::uint64_t s = 0; s < lb.size(); ++s) {
            const std::uint64_t t = prefix[s];
            lc[t] = la[t] * lb[s];
        }
        if (i + 1 < idx_.levels()) prefix = advance_prefix(prefix, la, idx_.degree(i));
    }
    return out;
}

WreathElement WreathElement::inverse() const {
    WreathElement out(idx_);
    std::vector<std::uint64_t> prefix{0};
    for (std::size_t i = 0; i < idx_.levels(); ++i) {
        const auto& la = labels_[i];
        auto& lc = out.labels_[i];
        for (std::uint64_t r = 0; r < la.size(); ++r) lc[r] = la[prefix[r]].inverse();
        if (i + 1 < idx_.levels()) prefix = advance_prefix(prefix, la, idx_.degree(i));
    }
    return out;
}

bool WreathElement::is_identity() const {
    for (const auto& level : labels_)
        for (const auto& p : level)
            if (!p.is_identity()) return false;
    return true;
}

std::vector<std::uint64_t> WreathElement::leaf_permutation() const {
    std::vector<std::uint64_t> prefix{0};
    for (std::size_t i = 0; i < idx_.levels(); ++i)
        prefix = advance_prefix(prefix, labels_[i], idx_.degree(i));
    return prefix;
}

CycleType WreathElement::leaf_cycle_type() const {
    const auto table = leaf_permutation();
    std::vector<std::uint64_t> parts;
    std::vector<bool> seen(table.size(), false);
    for (std::uint64_t i = 0; i < table.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0, x = i;
        do {
            seen[x] = true;
            x = table[x];
            ++len;
        } while (x != i);
        parts.push_back(len);
    }
    return CycleType(std::move(parts));
}

bool WreathElement::is_full_cycle_orbit() const {
    const auto table = leaf_permutation();
    std::uint64_t x = 0, steps = 0;
    do {
        x = table[x];
        ++steps;
    } while (x != 0);
    return steps == table.size();
}

bool WreathElement::is_full_cycle_recursive() const {
    if (!labels_[0][0].is_full_cycle()) return false;
    if (idx_.levels() == 1) return true;
    // prefix = action on level-i ranks, a full cycle by the levels already checked
    std::vector<std::uint64_t> prefix = advance_prefix({0}, labels_[0], idx_.degree(0));
    for (std::size_t i = 1; i < idx_.levels(); ++i) {
        const auto& labels = labels_[i];
        auto fiber_product = [&](std::uint64_t base) {
            Permutation prod(idx_.degree(i));
            std::uint64_t s = base;
            do {
                s = prefix[s];
                prod = labels[s] * prod;
            } while (s != base);
            return prod;
        };
        const bool ok = fiber_product(0).is_full_cycle();
#ifndef NDEBUG
        // The around-the-cycle products at all base vertices are conjugate, so
        // one verdict decides them all; spot-check that in debug builds.
        for (std::uint64_t base = 1; base < prefix.size(); ++base)
            assert(fiber_product(base).is_full_cycle() == ok);
#endif
        if (!ok) return false;
        if (i + 1 < idx_.levels()) prefix = advance_prefix(prefix, labels, idx_.degree(i));
    }
    return true;
}

std::string WreathElement::to_json() const {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& level : labels_) {
        nlohmann::json lv = nlohmann::json::array();
        for (const auto& p : level) {
            nlohmann::json imgs = nlohmann::json::array();
            for (std::uint32_t v : p.images()) imgs.push_back(v + 1); // 1-based on the wire
            lv.push_back(std::move(imgs));
        }
        levels.push_back(std::move(lv));
    }
    nlohmann::json j{{"index", idx_.degrees()}, {"labels", levels}};
    return j.dump();
}

WreathElement WreathElement::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("index") || !j.contains("labels"))
        throw std::invalid_argument("WreathElement: JSON needs 'index' and 'labels'");
    SphericalIndex idx(j.at("index").get<std::vector<std::uint32_t>>());
    std::vector<std::vector<Permutation>> labels;
    for (const auto& lv : j.at("labels")) {
        std::vector<Permutation> level;
        for (const auto& imgs : lv) {
            std::vector<std::uint32_t> v;
            for (const auto& e : imgs) {
                std::uint64_t x = e.get<std::uint64_t>();
                if (x == 0) throw std::invalid_argument("WreathElement: images are 1-based");
                v.push_back(static_cast<std::uint32_t>(x - 1));
            }
            level.push_back(Permutation::from_images(std::move(v)));
        }
        labels.push_back(std::move(level));
    }
    return from_labels(idx, std::move(labels));
}

bigint group_order(const SphericalIndex& idx) {
    bigint order = 1;
    for (std::size_t i = 0; i < idx.levels(); ++i)
        order *= bigint_pow(factorial(idx.degree(i)), idx.partial(i));
    return order;
}

bigint full_cycle_count(const SphericalIndex& idx) {
    bigint count = 1;
    for (std::size_t i = 0; i < idx.levels(); ++i) {
        count *= factorial(idx.degree(i) - 1);
        count *= bigint_pow(factorial(idx.degree(i)), idx.partial(i) - 1);
    }
    return count;
}

WreathEnumerator::WreathEnumerator(const SphericalIndex& idx) : cur_(idx) {}

const WreathElement* WreathEnumerator::next() {
    if (done_) return nullptr;
    if (fresh_) {
        fresh_ = false;
        return &cur_; // identity is lexicographically first
    }
    // Odometer over vertices, last vertex fastest.
    const auto& idx = cur_.index();
    for (std::size_t i = idx.levels(); i-- > 0;) {
        auto& level = cur_.level_mut(i);
        for (std::size_t r = level.size(); r-- > 0;) {
            if (level[r].next_lex()) return &cur_;
            // wrapped to identity; carry on borrowing
        }
    }
    done_ = true;
    return nullptr;
}

std::vector<WreathElement> enumerate_all(const SphericalIndex& idx, std::uint64_t limit) {
    if (group_order(idx) > limit)
        throw OrderExceedsLimit("enumerate_all: group order exceeds limit " + std::to_string(limit));
    std::vector<WreathElement> out;
    WreathEnumerator en(idx);
    while (const WreathElement* e = en.next()) out.push_back(*e);
    return out;
}

WreathElement sample_uniform(const SphericalIndex& idx, Rng& rng) {
    return WreathElement::random(idx, rng);
}

RatioEstimate estimate_full_cycle_ratio(const SphericalIndex& idx, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads) {
    if (samples == 0) throw std::invalid_argument("estimate_full_cycle_ratio: samples must be >= 1");
    constexpr std::uint64_t kBlock = 1 << 16;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> hits(blocks, 0);
    run_chunks(blocks, threads, [&](std::uint64_t b) {
        Rng rng(Rng::derive(seed, b));
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        std::uint64_t h = 0;
        for (std::uint64_t s = lo; s < hi; ++s)
            if (WreathElement::random(idx, rng).is_full_cycle_recursive()) ++h;
        hits[b] = h;
    });
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    const double r = static_cast<double>(total) / static_cast<double>(samples);
    const double se = std::sqrt(r * (1.0 - r) / static_cast<double>(samples));
    return RatioEstimate{r, se, total, samples};
}

} // namespace arbor

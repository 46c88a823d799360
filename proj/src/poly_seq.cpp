#include "arbor/poly_seq.hpp"

#include <fstream>
#include <sstream>

#include "arbor/numeric.hpp"
#include "arbor/rng.hpp"

namespace arbor {

namespace {

void require_member(const IntPoly& f, std::size_t k) {
    if (f.degree() < 1 || !f.is_monic())
        throw std::invalid_argument("PolySeqSpec: f_" + std::to_string(k) +
                                    " must be monic of degree >= 1");
}

} // namespace

PolySeqSpec PolySeqSpec::explicit_list(std::vector<IntPoly> polys, std::string desc) {
    if (polys.empty()) throw std::invalid_argument("PolySeqSpec: empty explicit list");
    for (std::size_t k = 0; k < polys.size(); ++k) require_member(polys[k], k + 1);
    PolySeqSpec s;
    s.kind_ = Kind::ExplicitList;
    s.polys_ = std::move(polys);
    s.desc_ = desc.empty() ? "explicit[" + std::to_string(s.polys_.size()) + "]" : std::move(desc);
    return s;
}

PolySeqSpec PolySeqSpec::constant(IntPoly poly) {
    require_member(poly, 1);
    PolySeqSpec s;
    s.kind_ = Kind::Constant;
    s.desc_ = "const:" + poly.to_string();
    s.polys_.push_back(std::move(poly));
    return s;
}

PolySeqSpec PolySeqSpec::prime_power_family(std::uint64_t q) {
    if (!is_prime_u64(q)) throw std::invalid_argument("PolySeqSpec: fmf base must be prime");
    PolySeqSpec s;
    s.kind_ = Kind::PrimePowerFamily;
    s.family_prime_ = q;
    s.desc_ = "fmf:" + std::to_string(q);
    return s;
}

PolySeqSpec PolySeqSpec::random_box(SphericalIndex idx, std::uint64_t box, std::uint64_t seed) {
    PolySeqSpec s;
    s.kind_ = Kind::RandomBox;
    s.box_index_ = std::move(idx);
    s.box_ = box;
    s.seed_ = seed;
    s.desc_ = "random:" + s.box_index_->to_string() + ":" + std::to_string(box) + ":" +
              std::to_string(seed);
    return s;
}

PolySeqSpec PolySeqSpec::parse(const std::string& tag) {
    const auto colon = tag.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("spec tag needs a prefix like const:, fmf:, file:, random:");
    const std::string head = tag.substr(0, colon);
    const std::string rest = tag.substr(colon + 1);
    if (head == "const") return constant(IntPoly::parse(rest));
    if (head == "fmf") return prime_power_family(std::stoull(rest));
    if (head == "file") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("spec file not readable: " + rest);
        std::vector<IntPoly> polys;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            polys.push_back(IntPoly::parse_coeff_list(line));
        }
        return explicit_list(std::move(polys), tag);
    }
    if (head == "random") {
        std::stringstream ss(rest);
        std::string idx, box, seed;
        if (!std::getline(ss, idx, ':') || !std::getline(ss, box, ':') ||
            !std::getline(ss, seed, ':'))
            throw std::invalid_argument("random spec needs random:<index>:<N>:<seed>");
        return random_box(SphericalIndex::parse(idx), std::stoull(box), std::stoull(seed));
    }
    throw std::invalid_argument("unknown spec prefix '" + head + "'");
}

IntPoly PolySeqSpec::nth(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("PolySeqSpec::nth: k must be >= 1");
    switch (kind_) {
        case Kind::Constant:
            return polys_[0];
        case Kind::ExplicitList:
            if (k > polys_.size())
                throw std::invalid_argument("PolySeqSpec::nth: list has only " +
                                            std::to_string(polys_.size()) + " members");
            return polys_[k - 1];
        case Kind::PrimePowerFamily: {
            // f_k = (x - q^(2k+1))^2 + q^(2k-1)
            const bigint q = family_prime_;
            const bigint shift = boost::multiprecision::pow(q, static_cast<unsigned>(2 * k + 1));
            const bigint add = boost::multiprecision::pow(q, static_cast<unsigned>(2 * k - 1));
            IntPoly lin(std::vector<bigint>{bigint(-shift), bigint(1)});
            return lin.mul(lin).add(IntPoly::constant(add));
        }
        case Kind::RandomBox: {
            if (k > box_index_->levels())
                throw std::invalid_argument("PolySeqSpec::nth: index has only " +
                                            std::to_string(box_index_->levels()) + " levels");
            Rng rng(Rng::derive(seed_, k));
            const std::uint32_t d = box_index_->degree(k - 1);
            std::vector<bigint> tail(d);
            for (auto& a : tail) a = rng.symmetric(box_);
            return IntPoly::monic_from_tail(tail);
        }
    }
    throw std::logic_error("PolySeqSpec::nth: unreachable");
}

std::uint32_t PolySeqSpec::degree_at(std::size_t k) const {
    switch (kind_) {
        case Kind::Constant:
            return static_cast<std::uint32_t>(polys_[0].degree());
        case Kind::PrimePowerFamily:
            return 2;
        case Kind::RandomBox:
            if (k == 0 || k > box_index_->levels())
                throw std::invalid_argument("PolySeqSpec::degree_at: out of range");
            return box_index_->degree(k - 1);
        case Kind::ExplicitList:
            if (k == 0 || k > polys_.size())
                throw std::invalid_argument("PolySeqSpec::degree_at: out of range");
            return static_cast<std::uint32_t>(polys_[k - 1].degree());
    }
    throw std::logic_error("PolySeqSpec::degree_at: unreachable");
}

std::uint64_t PolySeqSpec::composed_degree(std::size_t n) const {
    std::uint64_t d = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::uint64_t dk = degree_at(k);
        if (d > (std::uint64_t{1} << 62) / dk)
            throw std::overflow_error("PolySeqSpec: composed degree exceeds 2^62");
        d *= dk;
    }
    return d;
}

std::optional<std::size_t> PolySeqSpec::length() const {
    switch (kind_) {
        case Kind::ExplicitList:
            return polys_.size();
        case Kind::RandomBox:
            return box_index_->levels();
        default:
            return std::nullopt;
    }
}

IntPoly compose_prefix_exact(const PolySeqSpec& spec, std::size_t n, std::uint64_t degree_limit) {
    if (spec.composed_degree(n) > degree_limit)
        throw DegreeLimitExceeded("compose_prefix_exact: d^(n) exceeds limit " +
                                  std::to_string(degree_limit));
    if (n == 0) return IntPoly::x();
    IntPoly acc = spec.nth(1);
    for (std::size_t k = 2; k <= n; ++k) acc = acc.compose(spec.nth(k));
    return acc;
}

FpPoly compose_prefix_mod_p(const PolySeqSpec& spec, std::size_t n, PrimeModulus p) {
    if (n == 0) return FpPoly::x(p);
    FpPoly acc = spec.nth(1).reduce_mod(p);
    for (std::size_t k = 2; k <= n; ++k) acc = acc.compose(spec.nth(k).reduce_mod(p));
    return acc;
}

FpPoly CompositionCache::get(std::size_t n, PrimeModulus p) {
    const auto key = std::make_pair(n, p.value());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    FpPoly value = compose_prefix_mod_p(spec_, n, p);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, std::move(value)).first->second;
}

} // namespace arbor

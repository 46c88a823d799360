#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arbor/int_poly.hpp"
#include "arbor/spherical_index.hpp"

namespace arbor {

struct DegreeLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rule producing the monic integer polynomials f_1, f_2, ... of a sequence.
///
/// Variants: an explicit finite list; a constant sequence; the fixed-prime
/// family f_k = (x - q^(2k+1))^2 + q^(2k-1); or a seeded random box draw with
/// every non-leading coefficient uniform in [-N, N].
class PolySeqSpec {
  public:
    enum class Kind { ExplicitList, Constant, PrimePowerFamily, RandomBox };

    static PolySeqSpec explicit_list(std::vector<IntPoly> polys, std::string desc = "");
    static PolySeqSpec constant(IntPoly poly);
    static PolySeqSpec prime_power_family(std::uint64_t q);
    static PolySeqSpec random_box(SphericalIndex idx, std::uint64_t box, std::uint64_t seed);

    /// Inline mini-language: const:<poly> | fmf:<q> | file:<path> |
    /// random:<index>:<N>:<seed>. Polynomials are expressions in x or
    /// comma-separated coefficient lists with the constant term first.
    static PolySeqSpec parse(const std::string& tag);

    Kind kind() const { return kind_; }
    /// k-th sequence member, k >= 1; deterministic.
    IntPoly nth(std::size_t k) const;
    std::uint32_t degree_at(std::size_t k) const;
    /// d^(n) = deg f_1 * ... * deg f_n; d^(0) = 1.
    std::uint64_t composed_degree(std::size_t n) const;
    /// Number of available members; empty for unbounded sequences.
    std::optional<std::size_t> length() const;
    const std::string& describe() const { return desc_; }

  private:
    PolySeqSpec() = default;
    Kind kind_ = Kind::Constant;
    std::vector<IntPoly> polys_;   // ExplicitList / Constant
    std::uint64_t family_prime_ = 0;
    std::optional<SphericalIndex> box_index_;
    std::uint64_t box_ = 0;
    std::uint64_t seed_ = 0;
    std::string desc_;
};

/// Exact coefficients of f^(n) = f_1 o ... o f_n; f^(0) = x.
/// Throws DegreeLimitExceeded when d^(n) > degree_limit.
IntPoly compose_prefix_exact(const PolySeqSpec& spec, std::size_t n, std::uint64_t degree_limit);

/// f^(n) reduced mod p, composed entirely over F_p (the members are monic, so
/// reduction commutes with composition). Degree is exactly d^(n).
FpPoly compose_prefix_mod_p(const PolySeqSpec& spec, std::size_t n, PrimeModulus p);

/// Memoized f^(n) mod p per (n, p). Inserts are idempotent, so concurrent
/// recomputation races are benign.
class CompositionCache {
  public:
    explicit CompositionCache(PolySeqSpec spec) : spec_(std::move(spec)) {}
    const PolySeqSpec& spec() const { return spec_; }
    FpPoly get(std::size_t n, PrimeModulus p);

  private:
    PolySeqSpec spec_;
    std::mutex mu_;
    std::map<std::pair<std::size_t, std::uint64_t>, FpPoly> cache_;
};

} // namespace arbor

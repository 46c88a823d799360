#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbor/cycle_type.hpp"

namespace arbor {

struct NotSquarefree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An odd prime below 2^62, validated by deterministic Miller-Rabin.
class PrimeModulus {
  public:
    explicit PrimeModulus(std::uint64_t p);
    std::uint64_t value() const { return p_; }
    bool operator==(const PrimeModulus&) const = default;

  private:
    std::uint64_t p_;
};

/// Dense polynomial over F_p. Coefficients are stored reduced, constant term
/// first, with no leading zeros; the zero polynomial has an empty table.
class FpPoly {
  public:
    FpPoly() : p_(0) {}
    explicit FpPoly(PrimeModulus p) : p_(p.value()) {}
    FpPoly(PrimeModulus p, std::vector<std::int64_t> coeffs);
    static FpPoly from_residues(std::uint64_t p, std::vector<std::uint64_t> reduced);
    static FpPoly zero(PrimeModulus p) { return FpPoly(p); }
    static FpPoly constant(PrimeModulus p, std::uint64_t c);
    static FpPoly x(PrimeModulus p);

    std::uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    FpPoly add(const FpPoly& g) const;
    FpPoly sub(const FpPoly& g) const;
    FpPoly mul(const FpPoly& g) const;
    FpPoly operator+(const FpPoly& g) const { return add(g); }
    FpPoly operator-(const FpPoly& g) const { return sub(g); }
    FpPoly operator*(const FpPoly& g) const { return mul(g); }
    bool operator==(const FpPoly&) const = default;

    /// Remainder of division by g; throws std::domain_error when g is zero.
    FpPoly rem(const FpPoly& g) const;
    std::pair<FpPoly, FpPoly> divrem(const FpPoly& g) const;
    /// Monic gcd; gcd(f, 0) = monic(f).
    FpPoly gcd(const FpPoly& g) const;
    FpPoly monic() const;
    /// this(g(x)) by Horner.
    FpPoly compose(const FpPoly& g) const;
    FpPoly derivative() const;
    std::uint64_t eval(std::uint64_t x) const;
    /// this^e mod f.
    FpPoly powmod(std::uint64_t e, const FpPoly& f) const;

    std::string to_string() const;

  private:
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;

    void trim();
    void require_same_modulus(const FpPoly& g) const;
};

/// x^(p^k) reduced mod f (deg f >= 1).
FpPoly frobenius_power(const FpPoly& f, std::uint64_t k);
/// True iff gcd(f, f') = 1 (deg f >= 1).
bool is_squarefree(const FpPoly& f);
/// Rabin's criterion: x^(p^m) = x mod f together with coprimality at the
/// maximal proper divisors m/q of m = deg f.
bool is_irreducible(const FpPoly& f);
/// Multiset of irreducible-factor degrees via distinct-degree factorization;
/// requires f monic-normalizable and squarefree (throws NotSquarefree).
CycleType ddf_type(const FpPoly& f);

} // namespace arbor

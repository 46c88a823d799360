#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arbor/fp_poly.hpp"

namespace arbor {

using bigint = boost::multiprecision::cpp_int;

/// Dense integer polynomial, constant term first, arbitrary-precision
/// coefficients, no leading zeros.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<bigint> coeffs);
    static IntPoly from_int64(std::vector<std::int64_t> coeffs);
    static IntPoly x();
    static IntPoly constant(bigint c);
    /// Monic x^d + a_1 x^(d-1) + ... + a_d from (a_1, ..., a_d).
    static IntPoly monic_from_tail(const std::vector<bigint>& tail);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const bigint& coeff(std::size_t i) const;
    const std::vector<bigint>& coeffs() const { return c_; }
    const bigint& leading() const;

    IntPoly add(const IntPoly& g) const;
    IntPoly sub(const IntPoly& g) const;
    IntPoly mul(const IntPoly& g) const;
    IntPoly operator+(const IntPoly& g) const { return add(g); }
    IntPoly operator-(const IntPoly& g) const { return sub(g); }
    IntPoly operator*(const IntPoly& g) const { return mul(g); }
    bool operator==(const IntPoly&) const = default;

    /// this(g(x)) by Horner.
    IntPoly compose(const IntPoly& g) const;
    bigint eval(const bigint& x) const;
    IntPoly derivative() const;
    FpPoly reduce_mod(PrimeModulus p) const;

    /// Parses either a comma-separated coefficient list (constant term first,
    /// e.g. "-2,0,1") or a simple expression in x (e.g. "x^2-2", "3*x^2+x-1").
    static IntPoly parse(const std::string& text);
    static IntPoly parse_coeff_list(const std::string& text);
    static IntPoly parse_expression(const std::string& text);
    std::string to_string() const;       // "x^2 - 2"
    std::string to_coeff_list() const;   // "-2,0,1"

  private:
    std::vector<bigint> c_;
    void trim();
};

/// Res(f, g) via fraction-free (Bareiss) elimination of the Sylvester matrix.
bigint resultant(const IntPoly& f, const IntPoly& g);
/// (-1)^(m(m-1)/2) Res(f, f') / lc(f) for deg f = m >= 1.
bigint discriminant(const IntPoly& f);

bool is_perfect_square(const bigint& n);

} // namespace arbor

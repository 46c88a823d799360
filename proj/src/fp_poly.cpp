#include "arbor/fp_poly.hpp"

#include <algorithm>

#include "arbor/numeric.hpp"

namespace arbor {

namespace {

// Below this bound, products fit in 42 bits and up to 2^20 of them can be
// accumulated in a u64 before a single reduction.
constexpr std::uint64_t kLazyBound = std::uint64_t{1} << 21;
constexpr std::size_t kMaxLazyTerms = std::size_t{1} << 20;

} // namespace

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0 || p >= (std::uint64_t{1} << 62) || !is_prime_u64(p))
        throw std::invalid_argument("PrimeModulus: need an odd prime below 2^62, got " +
                                    std::to_string(p));
}

FpPoly::FpPoly(PrimeModulus p, std::vector<std::int64_t> coeffs) : p_(p.value()) {
    c_.reserve(coeffs.size());
    const std::int64_t m = static_cast<std::int64_t>(p_);
    for (std::int64_t v : coeffs) {
        std::int64_t r = v % m;
        if (r < 0) r += m;
        c_.push_back(static_cast<std::uint64_t>(r));
    }
    trim();
}

FpPoly FpPoly::from_residues(std::uint64_t p, std::vector<std::uint64_t> reduced) {
    FpPoly f;
    f.p_ = p;
    f.c_ = std::move(reduced);
    f.trim();
    return f;
}

FpPoly FpPoly::constant(PrimeModulus p, std::uint64_t c) {
    return from_residues(p.value(), {c % p.value()});
}

FpPoly FpPoly::x(PrimeModulus p) { return from_residues(p.value(), {0, 1}); }

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void FpPoly::require_same_modulus(const FpPoly& g) const {
    if (p_ != g.p_) throw std::invalid_argument("FpPoly: modulus mismatch");
}

std::uint64_t FpPoly::leading() const {
    if (c_.empty()) throw std::domain_error("FpPoly::leading: zero polynomial");
    return c_.back();
}

FpPoly FpPoly::add(const FpPoly& g) const {
    require_same_modulus(g);
    std::vector<std::uint64_t> out(std::max(c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = addmod(coeff(i), g.coeff(i), p_);
    return from_residues(p_, std::move(out));
}

FpPoly FpPoly::sub(const FpPoly& g) const {
    require_same_modulus(g);
    std::vector<std::uint64_t> out(std::max(c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = submod(coeff(i), g.coeff(i), p_);
    return from_residues(p_, std::move(out));
}

FpPoly FpPoly::mul(const FpPoly& g) const {
    require_same_modulus(g);
    if (is_zero() || g.is_zero()) return FpPoly::from_residues(p_, {});
    const std::size_t n = c_.size(), m = g.c_.size();
    std::vector<std::uint64_t> out(n + m - 1, 0);
    if (p_ < kLazyBound && std::min(n, m) <= kMaxLazyTerms) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t a = c_[i];
            if (a == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i + j] += a * g.c_[j];
        }
        for (auto& v : out) v %= p_;
    } else {
        for (std::size_t k = 0; k < out.size(); ++k) {
            u128 acc = 0;
            const std::size_t lo = k >= m ? k - m + 1 : 0;
            const std::size_t hi = std::min(k, n - 1);
            for (std::size_t i = lo; i <= hi; ++i) {
                acc += u128(c_[i]) * g.c_[k - i];
                if (acc >> 126) acc %= p_;
            }
            out[k] = static_cast<std::uint64_t>(acc % p_);
        }
    }
    return from_residues(p_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divrem(const FpPoly& g) const {
    require_same_modulus(g);
    if (g.is_zero()) throw std::domain_error("FpPoly::divrem: division by zero polynomial");
    if (degree() < g.degree()) return {FpPoly::from_residues(p_, {}), *this};
    const std::size_t m = g.c_.size();
    const std::uint64_t inv_lead = invmod(g.leading(), p_);
    std::vector<std::uint64_t> r = c_;
    std::vector<std::uint64_t> q(c_.size() - m + 1, 0);
    if (p_ < kLazyBound && c_.size() - m + 1 <= kMaxLazyTerms) {
        // Accumulate q*(p - g_j) instead of subtracting, one reduction at the end.
        for (std::size_t top = r.size(); top-- >= m;) {
            r[top] %= p_;
            const std::uint64_t lead = r[top];
            if (lead == 0) {
                if (top + 1 == m) break;
                continue;
            }
            const std::uint64_t qc = mulmod(lead, inv_lead, p_);
            q[top - m + 1] = qc;
            const std::size_t base = top - m + 1;
            for (std::size_t j = 0; j + 1 < m; ++j) r[base + j] += qc * (p_ - g.c_[j]);
            r[top] = 0;
            if (top + 1 == m) break;
        }
        for (std::size_t i = 0; i + 1 < m && i < r.size(); ++i) r[i] %= p_;
    } else {
        for (std::size_t top = r.size(); top-- >= m;) {
            const std::uint64_t lead = r[top];
            if (lead != 0) {
                const std::uint64_t qc = mulmod(lead, inv_lead, p_);
                q[top - m + 1] = qc;
                const std::size_t base = top - m + 1;
                for (std::size_t j = 0; j + 1 < m; ++j)
                    r[base + j] = submod(r[base + j], mulmod(qc, g.c_[j], p_), p_);
                r[top] = 0;
            }
            if (top + 1 == m) break;
        }
    }
    r.resize(m - 1);
    return {from_residues(p_, std::move(q)), from_residues(p_, std::move(r))};
}

FpPoly FpPoly::rem(const FpPoly& g) const { return divrem(g).second; }

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    if (c_.back() == 1) return *this;
    const std::uint64_t inv = invmod(c_.back(), p_);
    std::vector<std::uint64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = mulmod(c_[i], inv, p_);
    return from_residues(p_, std::move(out));
}

FpPoly FpPoly::gcd(const FpPoly& g) const {
    require_same_modulus(g);
    FpPoly a = *this, b = g;
    while (!b.is_zero()) {
        FpPoly r = a.rem(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly FpPoly::compose(const FpPoly& g) const {
    require_same_modulus(g);
    FpPoly acc = FpPoly::from_residues(p_, {});
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc.mul(g);
        acc = acc.add(FpPoly::from_residues(p_, {c_[i]}));
    }
    return acc;
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return from_residues(p_, {});
    std::vector<std::uint64_t> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = mulmod(c_[i], i % p_, p_);
    return from_residues(p_, std::move(out));
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
    x %= p_;
    std::uint64_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p_), c_[i], p_);
    return acc;
}

FpPoly FpPoly::powmod(std::uint64_t e, const FpPoly& f) const {
    require_same_modulus(f);
    FpPoly result = FpPoly::constant(PrimeModulus(p_), 1).rem(f);
    FpPoly base = rem(f);
    while (e) {
        if (e & 1) result = result.mul(base).rem(f);
        base = base.mul(base).rem(f);
        e >>= 1;
    }
    return result;
}

std::string FpPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0 || c_[i] != 1) out += std::to_string(c_[i]);
        if (i >= 1) {
            if (c_[i] != 1) out += "*";
            out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

/// Applies the Frobenius map v -> v^p mod f. For moderate degrees the map is
/// precomputed as the matrix of x^(jp) mod f, making one application an m x m
/// matrix-vector product instead of a full exponentiation.
class FrobeniusEngine {
  public:
    explicit FrobeniusEngine(const FpPoly& f)
        : f_(f), p_(f.modulus()), m_(static_cast<std::size_t>(f.degree())) {
        u_ = FpPoly::x(PrimeModulus(p_)).powmod(p_, f_);
        use_matrix_ = m_ >= 8 && m_ <= 2048;
        if (!use_matrix_) return;
        rows_.assign(m_ * m_, 0);
        rows_[0] = 1 % p_;
        FpPoly pw = FpPoly::constant(PrimeModulus(p_), 1).rem(f_);
        for (std::size_t j = 1; j < m_; ++j) {
            pw = pw.mul(u_).rem(f_);
            for (std::size_t i = 0; i < m_; ++i) rows_[j * m_ + i] = pw.coeff(i);
        }
    }

    const FpPoly& x_power_p() const { return u_; }

    FpPoly apply(const FpPoly& v) const {
        if (!use_matrix_) return v.powmod(p_, f_);
        std::vector<std::uint64_t> out(m_, 0);
        if (p_ < kLazyBound && m_ <= kMaxLazyTerms) {
            for (std::size_t j = 0; j <= static_cast<std::size_t>(v.degree()); ++j) {
                const std::uint64_t vj = v.coeff(j);
                if (vj == 0) continue;
                const std::uint64_t* row = &rows_[j * m_];
                for (std::size_t i = 0; i < m_; ++i) out[i] += vj * row[i];
            }
            for (auto& x : out) x %= p_;
        } else {
            for (std::size_t j = 0; j <= static_cast<std::size_t>(v.degree()); ++j) {
                const std::uint64_t vj = v.coeff(j);
                if (vj == 0) continue;
                const std::uint64_t* row = &rows_[j * m_];
                for (std::size_t i = 0; i < m_; ++i)
                    out[i] = addmod(out[i], mulmod(vj, row[i], p_), p_);
            }
        }
        return FpPoly::from_residues(p_, std::move(out));
    }

  private:
    const FpPoly& f_;
    std::uint64_t p_;
    std::size_t m_;
    bool use_matrix_ = false;
    std::vector<std::uint64_t> rows_;
    FpPoly u_;
};

std::vector<std::uint64_t> distinct_prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

FpPoly frobenius_power(const FpPoly& f, std::uint64_t k) {
    if (f.degree() < 1) throw std::invalid_argument("frobenius_power: deg f must be >= 1");
    FpPoly x = FpPoly::x(PrimeModulus(f.modulus())).rem(f);
    if (k == 0 || f.degree() == 1) return x;
    FrobeniusEngine engine(f);
    FpPoly v = engine.x_power_p();
    for (std::uint64_t i = 1; i < k; ++i) v = engine.apply(v);
    return v;
}

bool is_squarefree(const FpPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("is_squarefree: deg f must be >= 1");
    const FpPoly d = f.derivative();
    if (d.is_zero()) return false; // p-th power
    return f.gcd(d).degree() == 0;
}

bool is_irreducible(const FpPoly& f) {
    const int deg = f.degree();
    if (deg < 1) throw std::invalid_argument("is_irreducible: deg f must be >= 1");
    if (deg == 1) return true;
    const FpPoly fm = f.monic();
    if (!is_squarefree(fm)) return false;
    const std::size_t m = static_cast<std::size_t>(deg);
    const FpPoly x = FpPoly::x(PrimeModulus(f.modulus()));

    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t q : distinct_prime_divisors(m)) checkpoints.push_back(m / q);
    std::sort(checkpoints.begin(), checkpoints.end());

    FrobeniusEngine engine(fm);
    FpPoly v = engine.x_power_p(); // x^(p^1)
    for (std::uint64_t k = 1; k <= m; ++k) {
        if (k > 1) v = engine.apply(v);
        if (std::binary_search(checkpoints.begin(), checkpoints.end(), k)) {
            if (v.sub(x).gcd(fm).degree() != 0) return false;
        }
    }
    return v == x.rem(fm);
}

CycleType ddf_type(const FpPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("ddf_type: deg f must be >= 1");
    const FpPoly fm = f.monic();
    if (!is_squarefree(fm)) throw NotSquarefree("ddf_type: polynomial is not squarefree");
    const FpPoly x = FpPoly::x(PrimeModulus(f.modulus()));

    std::vector<std::uint64_t> parts;
    FpPoly remaining = fm;
    FrobeniusEngine engine(fm);
    FpPoly v = x.rem(fm);
    for (std::uint64_t k = 1; 2 * k <= static_cast<std::uint64_t>(remaining.degree()); ++k) {
        v = k == 1 ? engine.x_power_p() : engine.apply(v);
        const FpPoly g = v.rem(remaining).sub(x.rem(remaining)).gcd(remaining);
        if (g.degree() > 0) {
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(g.degree()) / k; ++i)
                parts.push_back(k);
            remaining = remaining.divrem(g).first;
        }
    }
    if (remaining.degree() > 0) parts.push_back(static_cast<std::uint64_t>(remaining.degree()));
    return CycleType(std::move(parts));
}

} // namespace arbor

#include "arbor/int_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace arbor {

IntPoly::IntPoly(std::vector<bigint> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_int64(std::vector<std::int64_t> coeffs) {
    std::vector<bigint> c(coeffs.begin(), coeffs.end());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::x() { return from_int64({0, 1}); }

IntPoly IntPoly::constant(bigint c) { return IntPoly(std::vector<bigint>{std::move(c)}); }

IntPoly IntPoly::monic_from_tail(const std::vector<bigint>& tail) {
    std::vector<bigint> c(tail.rbegin(), tail.rend());
    c.push_back(1);
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const bigint& IntPoly::coeff(std::size_t i) const {
    static const bigint zero = 0;
    return i < c_.size() ? c_[i] : zero;
}

const bigint& IntPoly::leading() const {
    if (c_.empty()) throw std::domain_error("IntPoly::leading: zero polynomial");
    return c_.back();
}

IntPoly IntPoly::add(const IntPoly& g) const {
    std::vector<bigint> out(std::max(c_.size(), g.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + g.coeff(i);
    return IntPoly(std::move(out));
}

IntPoly IntPoly::sub(const IntPoly& g) const {
    std::vector<bigint> out(std::max(c_.size(), g.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - g.coeff(i);
    return IntPoly(std::move(out));
}

IntPoly IntPoly::mul(const IntPoly& g) const {
    if (is_zero() || g.is_zero()) return IntPoly();
    std::vector<bigint> out(c_.size() + g.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < g.c_.size(); ++j) out[i + j] += c_[i] * g.c_[j];
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::compose(const IntPoly& g) const {
    IntPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc.mul(g);
        acc = acc.add(IntPoly::constant(c_[i]));
    }
    return acc;
}

bigint IntPoly::eval(const bigint& x) const {
    bigint acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<bigint> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<std::int64_t>(i);
    return IntPoly(std::move(out));
}

FpPoly IntPoly::reduce_mod(PrimeModulus p) const {
    const bigint m = p.value();
    std::vector<std::uint64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        bigint r = c_[i] % m;
        if (r < 0) r += m;
        out[i] = r.convert_to<std::uint64_t>();
    }
    return FpPoly::from_residues(p.value(), std::move(out));
}

IntPoly IntPoly::parse(const std::string& text) {
    if (text.find('x') != std::string::npos) return parse_expression(text);
    return parse_coeff_list(text);
}

IntPoly IntPoly::parse_coeff_list(const std::string& text) {
    std::vector<bigint> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) throw std::invalid_argument("IntPoly: empty coefficient in list");
        try {
            coeffs.emplace_back(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("IntPoly: bad coefficient '" + item + "'");
        }
    }
    if (coeffs.empty()) throw std::invalid_argument("IntPoly: empty coefficient list");
    return IntPoly(std::move(coeffs));
}

IntPoly IntPoly::parse_expression(const std::string& text) {
    // Terms of the form [sign][coeff][*][x[^k]], e.g. "x^4-4*x^2+2".
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("IntPoly: empty expression");

    std::vector<bigint> coeffs;
    auto bump = [&](std::size_t k, const bigint& v) {
        if (coeffs.size() <= k) coeffs.resize(k + 1);
        coeffs[k] += v;
    };

    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) throw std::invalid_argument("IntPoly: dangling sign in expression");
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        bigint coeff = digits.empty() ? bigint(1) : bigint(digits);
        coeff *= sign;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            std::size_t exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) throw std::invalid_argument("IntPoly: missing exponent after '^'");
                exp = std::stoull(e);
            }
            bump(exp, coeff);
        } else {
            if (digits.empty())
                throw std::invalid_argument("IntPoly: unexpected character '" +
                                            std::string(1, s[i]) + "'");
            bump(0, coeff);
        }
    }
    return IntPoly(std::move(coeffs));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        bigint a = c_[i];
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        const bool want_coeff = (i == 0) || a != 1;
        if (want_coeff) out += a.str();
        if (i >= 1) {
            if (want_coeff) out += "*";
            out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string IntPoly::to_coeff_list() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ',';
        out += c_[i].str();
    }
    return out;
}

bigint resultant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0) return boost::multiprecision::pow(f.coeff(0), static_cast<unsigned>(n));
    if (n == 0) return boost::multiprecision::pow(g.coeff(0), static_cast<unsigned>(m));

    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<bigint>> a(size, std::vector<bigint>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) a[r][r + j] = f.coeff(static_cast<std::size_t>(m - j));
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) a[n + r][r + j] = g.coeff(static_cast<std::size_t>(n - j));

    // Bareiss: exact integer elimination, determinant ends up in a[k][k].
    bigint prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (a[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < size && a[pivot][k] == 0) ++pivot;
            if (pivot == size) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

bigint discriminant(const IntPoly& f) {
    const int m = f.degree();
    if (m < 1) throw std::invalid_argument("discriminant: deg f must be >= 1");
    bigint res = resultant(f, f.derivative());
    res /= f.leading();
    const int e = (m * (m - 1) / 2) % 2;
    return e ? -res : res;
}

bool is_perfect_square(const bigint& n) {
    if (n < 0) return false;
    const bigint r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

} // namespace arbor

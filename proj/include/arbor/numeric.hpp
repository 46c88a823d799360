#pragma once

#include <cstdint>
#include <stdexcept>

namespace arbor {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    a += b;
    if (a >= m || a < b) a -= m;
    return a;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

// Modular inverse for gcd(a, m) = 1 via extended Euclid.
inline u64 invmod(u64 a, u64 m) {
    a %= m;
    if (a == 0) throw std::domain_error("invmod: zero has no inverse");
    std::int64_t t = 0, nt = 1;
    u64 r = m, nr = a;
    while (nr != 0) {
        u64 q = r / nr;
        std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
        t = nt;
        nt = tmp;
        u64 tmpr = r - q * nr;
        r = nr;
        nr = tmpr;
    }
    if (r != 1) throw std::domain_error("invmod: element not invertible");
    return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

// Jacobi symbol (a / n) for odd n > 0; equals the Legendre symbol when n is prime.
inline int jacobi(u64 a, u64 n) {
    if (n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd");
    a %= n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// Deterministic Miller-Rabin for n < 2^62.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace arbor

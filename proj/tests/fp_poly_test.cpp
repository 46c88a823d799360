#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/fp_poly.hpp"
#include "arbor/rng.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

FpPoly make(std::uint64_t p, std::vector<std::int64_t> coeffs) {
    return FpPoly(PrimeModulus(p), std::move(coeffs));
}

FpPoly random_poly(std::uint64_t p, int degree, Rng& rng) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = static_cast<std::int64_t>(rng.below(p));
    if (c.back() == 0) c.back() = 1;
    return make(p, std::move(c));
}

} // namespace

TEST_CASE("prime modulus validation") {
    CHECK_THROWS_AS(PrimeModulus(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus((std::uint64_t{1} << 62) + 1), std::invalid_argument);
    CHECK(PrimeModulus(3).value() == 3);
    CHECK(PrimeModulus(4611686018427387847ull).value() == 4611686018427387847ull); // < 2^62
}

TEST_CASE("ring arithmetic basics") {
    // (x+1)(x-1) = x^2 - 1 over F_5
    CHECK(make(5, {1, 1}).mul(make(5, {-1, 1})) == make(5, {-1, 0, 1}));
    // gcd(x^2-1, x-1) = x - 1 over F_7
    CHECK(make(7, {-1, 0, 1}).gcd(make(7, {-1, 1})) == make(7, {-1, 1}));
    // gcd(f, 0) = monic(f)
    const auto f = make(7, {2, 4});
    CHECK(f.gcd(FpPoly::zero(PrimeModulus(7))) == f.monic());
    CHECK(f.monic().leading() == 1);

    CHECK_THROWS_AS(f.rem(FpPoly::zero(PrimeModulus(7))), std::domain_error);
    CHECK_THROWS_AS(make(5, {1}).add(make(7, {1})), std::invalid_argument);

    // negative coefficients reduce into range
    CHECK(make(5, {-1}) == make(5, {4}));
}

TEST_CASE("divrem reconstructs the dividend") {
    Rng rng(1);
    // spans the lazy-accumulation kernel (small p) and the wide kernel
    for (std::uint64_t p : {3ull, 97ull, 1000003ull, 1152921504606846883ull,
                            4611686018427387847ull}) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto a = random_poly(p, 1 + static_cast<int>(rng.below(8)), rng);
            const auto b = random_poly(p, 1 + static_cast<int>(rng.below(5)), rng);
            const auto [quot, rem] = a.divrem(b);
            CHECK(quot.mul(b).add(rem) == a);
            CHECK(rem.degree() < b.degree());
        }
    }
}

TEST_CASE("frobenius power") {
    const auto f = make(3, {-2, 0, 1}); // x^2 - 2 over F_3
    CHECK(frobenius_power(f, 0) == FpPoly::x(PrimeModulus(3)));
    // x^3 = x * x^2 = 2x mod (x^2 - 2)
    CHECK(frobenius_power(f, 1) == make(3, {0, 2}));

    const auto g = make(11, {3, 1, 0, 0, 1});
    const auto once = frobenius_power(g, 1);
    CHECK(frobenius_power(g, 2) == once.powmod(11, g));
}

TEST_CASE("irreducibility spot cases") {
    CHECK(is_irreducible(make(3, {-2, 0, 1})));      // x^2-2 mod 3
    CHECK_FALSE(is_irreducible(make(7, {-2, 0, 1}))); // 3^2 = 2 mod 7
    for (std::int64_t c : {0, 1, 5, -3}) CHECK(is_irreducible(make(11, {c, 1})));
    CHECK_FALSE(is_irreducible(make(3, {0, 0, 0, 1}))); // x^3, p-th power
}

TEST_CASE("count of monic irreducible quadratics is p(p-1)/2") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        std::uint64_t count = 0;
        for (std::uint64_t b = 0; b < p; ++b)
            for (std::uint64_t c = 0; c < p; ++c)
                if (is_irreducible(make(p, {static_cast<std::int64_t>(c),
                                            static_cast<std::int64_t>(b), 1})))
                    ++count;
        CHECK(count == p * (p - 1) / 2);
    }
}

TEST_CASE("squarefree detection") {
    CHECK_FALSE(is_squarefree(make(5, {0, 0, 1}))); // x^2
    CHECK(is_squarefree(make(5, {-2, 0, 1})));
    CHECK(is_squarefree(make(13, {2, 0, 1}))); // irreducible
    CHECK_THROWS_AS(is_squarefree(make(5, {1})), std::invalid_argument);
}

TEST_CASE("ddf types on pinned cases") {
    CHECK(ddf_type(make(7, {-2, 0, 1})) == CycleType({1, 1})); // roots +-3
    CHECK(ddf_type(make(3, {-2, 0, 1})) == CycleType({2}));
    CHECK_THROWS_AS(ddf_type(make(5, {0, 0, 1})), NotSquarefree);

    const auto f29 = make(29, {2, 0, -4, 0, 1}); // x^4 - 4x^2 + 2
    const auto type = ddf_type(f29);
    CHECK(type.sum() == 4);
    CHECK(type == CycleType(oracles::factor_degrees(f29)));
}

TEST_CASE("ddf matches the brute-force factorization oracle") {
    Rng rng(99);
    const std::uint64_t small_p[] = {3, 5, 13};
    const std::uint64_t big_p[] = {31, 97};
    int checked = 0;
    for (std::uint64_t p : small_p) {
        for (int deg = 1; deg <= 6; ++deg) {
            for (int trial = 0; trial < 4; ++trial) {
                const auto f = random_poly(p, deg, rng);
                if (!is_squarefree(f)) continue;
                CHECK(ddf_type(f) == CycleType(oracles::factor_degrees(f)));
                ++checked;
            }
        }
    }
    for (std::uint64_t p : big_p) {
        for (int deg = 1; deg <= 4; ++deg) {
            for (int trial = 0; trial < 4; ++trial) {
                const auto f = random_poly(p, deg, rng);
                if (!is_squarefree(f)) continue;
                CHECK(ddf_type(f) == CycleType(oracles::factor_degrees(f)));
                ++checked;
            }
        }
    }
    // one deeper case at moderate size
    const auto f = random_poly(31, 6, rng);
    if (is_squarefree(f)) CHECK(ddf_type(f) == CycleType(oracles::factor_degrees(f)));
    CHECK(checked > 40);
}

TEST_CASE("irreducible iff ddf is a single part") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = trial % 2 ? 13 : 101;
        const auto f = random_poly(p, 2 + static_cast<int>(rng.below(5)), rng);
        if (!is_squarefree(f)) continue;
        CHECK(is_irreducible(f) == (ddf_type(f) == CycleType({static_cast<std::uint64_t>(f.degree())})));
    }
}

TEST_CASE("irreducibility at larger degree agrees with ddf route") {
    // exercises the Frobenius-matrix path (degree >= 8)
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_poly(211, 8 + static_cast<int>(rng.below(9)), rng);
        if (!is_squarefree(f)) continue;
        const bool direct = is_irreducible(f);
        const bool via_ddf = ddf_type(f).is_single_cycle();
        CHECK(direct == via_ddf);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "arbor/galois.hpp"
#include "arbor/density.hpp"
#include "arbor/rng.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {
IntPoly quartic(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return IntPoly::from_int64({d, c, b, a, 1});
}
} // namespace

TEST_CASE("quadratic classification") {
    CHECK(galois_quadratic(IntPoly::parse("x^2-2")) == QuadraticGaloisLabel::S2);
    CHECK(galois_quadratic(IntPoly::parse("x^2-4")) == QuadraticGaloisLabel::Reducible);
    CHECK(galois_quadratic(IntPoly::parse("x^2+x+1")) == QuadraticGaloisLabel::S2);
    CHECK_THROWS_AS(galois_quadratic(IntPoly::parse("x^3-2")), std::invalid_argument);
}

TEST_CASE("quadratic classification equals the integer-square oracle exhaustively") {
    for (std::int64_t b = -200; b <= 200; ++b) {
        for (std::int64_t c = -200; c <= 200; ++c) {
            const bigint disc = bigint(b) * b - 4 * bigint(c);
            bool square = false;
            if (disc >= 0) {
                const bigint r = boost::multiprecision::sqrt(disc);
                square = r * r == disc;
            }
            const auto label = galois_quadratic(IntPoly(std::vector<bigint>{bigint(c), bigint(b), 1}));
            CHECK((label == QuadraticGaloisLabel::S2) == !square);
        }
    }
}

TEST_CASE("quartic irreducibility over Q") {
    CHECK(is_irreducible_quartic_q(quartic(0, -4, 0, 2)));  // Eisenstein at 2
    CHECK_FALSE(is_irreducible_quartic_q(quartic(0, 0, 0, -1))); // x^4 - 1
    CHECK_FALSE(is_irreducible_quartic_q(quartic(0, 2, 0, 1)));  // (x^2+1)^2
    CHECK_FALSE(is_irreducible_quartic_q(quartic(0, 0, 0, 0)));  // x^4
    CHECK_FALSE(is_irreducible_quartic_q(quartic(2, -1, -2, 1))); // (x^2+x-1)^2
    CHECK(is_irreducible_quartic_q(quartic(0, 0, 1, 1)));
    // factorization with no rational roots: (x^2+x+1)(x^2-x+1) = x^4+x^2+1
    CHECK_FALSE(is_irreducible_quartic_q(quartic(0, 1, 0, 1)));
}

TEST_CASE("quartic classifier pinned labels") {
    CHECK(galois_quartic(quartic(0, -4, 0, 2)) == QuarticGaloisLabel::C4);  // x^4-4x^2+2
    CHECK(galois_quartic(quartic(0, 0, 0, -2)) == QuarticGaloisLabel::D4);  // x^4-2
    CHECK(galois_quartic(quartic(0, 0, 1, 1)) == QuarticGaloisLabel::S4);   // x^4+x+1
    CHECK(galois_quartic(quartic(0, 0, 0, 1)) == QuarticGaloisLabel::V4);   // x^4+1
    CHECK(galois_quartic(quartic(0, 0, 8, 12)) == QuarticGaloisLabel::A4);  // x^4+8x+12
    CHECK(galois_quartic(quartic(0, 0, 0, -1)) == QuarticGaloisLabel::Reducible);
}

TEST_CASE("quartic classifier agrees with the Frobenius-statistics oracle") {
    Rng rng(271828);
    int checked = 0;
    while (checked < 60) {
        IntPoly f = checked % 2 == 0
                        ? quartic(rng.symmetric(30), rng.symmetric(30), rng.symmetric(30),
                                  rng.symmetric(30))
                        : quartic(0, rng.symmetric(40), 0, rng.symmetric(40)); // biquadratics
        if (!is_irreducible_quartic_q(f)) continue;
        const auto expected = oracles::statistical_quartic_oracle(f, 4000);
        CHECK(galois_quartic(f) == expected);
        ++checked;
    }
}

TEST_CASE("composition D4 decision equals the exact classifier") {
    Rng rng(55);
    for (int trial = 0; trial < 400; ++trial) {
        const std::int64_t b1 = rng.symmetric(8), c1 = rng.symmetric(8);
        const std::int64_t b2 = rng.symmetric(8), c2 = rng.symmetric(8);
        const IntPoly f1 = IntPoly::from_int64({c1, b1, 1});
        const IntPoly f2 = IntPoly::from_int64({c2, b2, 1});
        const IntPoly g = f1.compose(f2);
        CHECK(composition_is_d4(b1, c1, b2, c2) == (galois_quartic(g) == QuarticGaloisLabel::D4));
    }
}

TEST_CASE("composed quartics stay within the dihedral closure") {
    // the composition preserves the fiber blocks, so S4 and A4 never appear
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const IntPoly f1 = IntPoly::from_int64({rng.symmetric(10), rng.symmetric(10), 1});
        const IntPoly f2 = IntPoly::from_int64({rng.symmetric(10), rng.symmetric(10), 1});
        const auto label = galois_quartic(f1.compose(f2));
        CHECK(label != QuarticGaloisLabel::S4);
        CHECK(label != QuarticGaloisLabel::A4);
    }
}

TEST_CASE("dihedral sequences match the full-cycle density prediction") {
    // for a composition with full dihedral image, the type-(4) frequency over
    // primes approaches 1/4
    Rng rng(2718);
    int checked = 0;
    while (checked < 3) {
        const std::int64_t b1 = rng.symmetric(12), c1 = rng.symmetric(12);
        const std::int64_t b2 = rng.symmetric(12), c2 = rng.symmetric(12);
        if (!composition_is_d4(b1, c1, b2, c2)) continue;
        const auto spec = PolySeqSpec::explicit_list(
            {IntPoly::from_int64({c1, b1, 1}), IntPoly::from_int64({c2, b2, 1})});
        const auto hist = frobenius_histogram(spec, 2, 10000);
        const double freq = hist.frequency(CycleType({4}));
        const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(hist.tallied()));
        CHECK(std::abs(freq - 0.25) <= 3 * sigma);
        ++checked;
    }
}

TEST_CASE("exact box sampling for the quadratic index") {
    // exhaustive N=10: 441 pairs, square-disc count is the exact complement
    const auto ex = sample_generic_density_exact(SphericalIndex({2}), 10, 0, 0);
    CHECK(ex.exhaustive);
    CHECK(ex.samples == 441);
    std::uint64_t squares = 0;
    for (std::int64_t b = -10; b <= 10; ++b)
        for (std::int64_t c = -10; c <= 10; ++c) {
            const bigint disc = bigint(b) * b - 4 * bigint(c);
            if (disc >= 0 && boost::multiprecision::sqrt(disc) * boost::multiprecision::sqrt(disc) == disc)
                ++squares;
        }
    CHECK(ex.all_success == 441 - squares);

    // sampled mode converges to the exhaustive fraction
    const auto sampled = sample_generic_density_exact(SphericalIndex({2}), 10, 8000, 99);
    CHECK(std::abs(sampled.fraction() - ex.fraction()) <= 4 * sampled.stderr_());

    // larger boxes: square discriminants thin out; the exhaustive count is
    // the oracle for the sampled run
    const auto ex100 = sample_generic_density_exact(SphericalIndex({2}), 100, 0, 0);
    const auto big = sample_generic_density_exact(SphericalIndex({2}), 100, 10000, 1);
    CHECK(std::abs(big.fraction() - ex100.fraction()) <= 4 * big.stderr_());
    CHECK(ex100.fraction() >= 0.95);
    const auto ex1000 = sample_generic_density_exact(SphericalIndex({2}), 1000, 0, 0);
    CHECK(ex1000.fraction() >= 0.99);
}

TEST_CASE("exact box sampling for index (2,2)") {
    const auto report = sample_generic_density_exact(SphericalIndex({2, 2}), 5, 0, 0);
    CHECK(report.exhaustive);
    CHECK(report.samples == 14641);
    // 9810 dihedral-full tuples in the N=5 box, frozen from an independent
    // reference implementation of the resolvent classification
    CHECK(report.all_success == 9810);
    CHECK(report.level_success[0] >= report.level_success[1]);

    const auto sampled = sample_generic_density_exact(SphericalIndex({2, 2}), 5, 4000, 31);
    CHECK(std::abs(sampled.fraction() - report.fraction()) <= 4 * sampled.stderr_() + 1e-9);

    CHECK_THROWS_AS(sample_generic_density_exact(SphericalIndex({3}), 5, 100, 0),
                    UnsupportedIndexExactMode);
}

TEST_CASE("growth curve on nested boxes") {
    const auto curve = exceptional_growth_curve({2, 4, 6});
    REQUIRE(curve.points.size() == 3);
    CHECK(curve.points[0].total == 625);
    CHECK(curve.points[1].total == 6561);
    CHECK(curve.points[2].total == 28561);
    CHECK(curve.points[0].exceptional <= curve.points[1].exceptional);
    CHECK(curve.points[1].exceptional <= curve.points[2].exceptional);
    // exceptional fractions shrink as the box grows
    CHECK(curve.points[2].exceptional_fraction < curve.points[0].exceptional_fraction);
    // spot check the largest box against per-tuple classification
    std::uint64_t exceptional = 0;
    for (std::int64_t b1 = -6; b1 <= 6; ++b1)
        for (std::int64_t c1 = -6; c1 <= 6; ++c1)
            for (std::int64_t b2 = -6; b2 <= 6; ++b2)
                for (std::int64_t c2 = -6; c2 <= 6; ++c2)
                    if (!composition_is_d4(b1, c1, b2, c2)) ++exceptional;
    CHECK(curve.points[2].exceptional == exceptional);
}

TEST_CASE("box reports are deterministic and thread-count invariant") {
    const auto a = sample_generic_density_exact(SphericalIndex({2, 2}), 12, 20000, 7, 1);
    const auto b = sample_generic_density_exact(SphericalIndex({2, 2}), 12, 20000, 7, 4);
    CHECK(a.all_success == b.all_success);
    CHECK(a.level_success == b.level_success);
}

TEST_CASE("heuristic mode flags a full-image cubic box") {
    HeuristicParams params;
    params.prime_bound = 3000;
    params.ref_samples = 100000;
    const auto report =
        sample_generic_density_heuristic(SphericalIndex({3}), 50, 6, 1234, params);
    CHECK_FALSE(report.exact_mode);
    CHECK(report.samples == 6);
    // almost every monic cubic in a large box has the full symmetric group
    CHECK(report.all_success >= 5);
}

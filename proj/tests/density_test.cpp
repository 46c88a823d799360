#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "arbor/density.hpp"
#include "arbor/galois.hpp"
#include "arbor/wreath.hpp"
#include "oracles.hpp"

using namespace arbor;

TEST_CASE("prime sieve") {
    CHECK(sieve_primes(10).primes == std::vector<std::uint32_t>{3, 5, 7});
    CHECK(sieve_primes(3).primes == std::vector<std::uint32_t>{3});
    CHECK_THROWS_AS(sieve_primes(2), std::invalid_argument);

    const auto range = sieve_primes(10000);
    CHECK(range.primes.size() == 1228); // 1229 primes up to 10^4 including 2
    for (std::uint32_t p : range.primes) CHECK(oracles::trial_division_prime(p));
    std::uint64_t odd_count = 0;
    for (std::uint64_t n = 3; n <= 10000; ++n)
        if (n % 2 == 1 && oracles::trial_division_prime(n)) ++odd_count;
    CHECK(odd_count == range.primes.size());
}

TEST_CASE("stable scan of the constant tower matches the residue classes") {
    const auto spec = PolySeqSpec::parse("const:x^2-2");
    const auto report = stable_scan(spec, 4, 2000);
    CHECK(report.ramified_count() == 0);
    for (std::size_t i = 0; i < report.primes.size(); ++i) {
        const std::uint32_t p = report.primes[i];
        const bool stable = p % 8 == 3 || p % 8 == 5;
        CHECK(report.max_level[i] == (stable ? 4 : 0));
    }
    CHECK(report.degrees == std::vector<std::uint64_t>{2, 4, 8, 16});
    CHECK(report.irreducibility_evidence(4));
}

TEST_CASE("scan levels agree with direct per-level irreducibility") {
    // independent route: compose mod p and run the general irreducibility
    // test at every level, no early exit, no norm chain
    for (const char* tag : {"const:x^2-2", "fmf:3", "random:2,2,2:7:5", "const:x^3+x+1",
                            "random:3,2:9:11"}) {
        const auto spec = PolySeqSpec::parse(tag);
        const std::uint32_t n_max =
            spec.length() ? static_cast<std::uint32_t>(std::min<std::size_t>(3, *spec.length()))
                          : 3;
        const auto report = stable_scan(spec, n_max, 500);
        for (std::size_t i = 0; i < report.primes.size(); ++i) {
            const PrimeModulus p(report.primes[i]);
            bool ramified = false;
            std::vector<bool> irr;
            for (std::uint32_t n = 1; n <= n_max; ++n) {
                const auto g = compose_prefix_mod_p(spec, n, p);
                if (!is_squarefree(g)) {
                    ramified = true;
                    break;
                }
                irr.push_back(is_irreducible(g));
            }
            if (ramified) {
                CHECK(report.max_level[i] == kRamified);
                continue;
            }
            // monotone: reducible at n forces reducible above
            for (std::uint32_t n = 1; n < n_max; ++n)
                if (!irr[n - 1]) CHECK_FALSE(irr[n]);
            std::int32_t expect = 0;
            while (expect < static_cast<std::int32_t>(n_max) && irr[expect]) ++expect;
            CHECK(report.max_level[i] == expect);
        }
    }
}

TEST_CASE("scan flags ramified primes and excludes them from densities") {
    // x^2 - 25: disc 100 = 2^2 5^2, so p = 5 is the only odd ramified prime
    const auto spec = PolySeqSpec::parse("const:x^2-25");
    const auto report = stable_scan(spec, 1, 50);
    CHECK(report.ramified_count() == 1);
    for (std::size_t i = 0; i < report.primes.size(); ++i)
        if (report.primes[i] == 5) CHECK(report.max_level[i] == kRamified);
    CHECK(report.good_count() == report.primes.size() - 1);
}

TEST_CASE("scan report output is well formed") {
    const auto report = stable_scan(PolySeqSpec::parse("const:x^2-2"), 2, 100);
    std::ostringstream os;
    report.write_csv(os);
    CHECK(os.str().find("level,degree,prime_bound") == 0);
    CHECK(report.to_json().find("\"prime_bound\": 100") != std::string::npos);
    for (std::uint32_t n = 1; n <= 2; ++n) {
        CHECK(report.density_at_level(n) >= 0.0);
        CHECK(report.density_at_level(n) <= 1.0);
    }
}

TEST_CASE("frobenius histogram of the quadratic tower") {
    const auto spec = PolySeqSpec::parse("const:x^2-2");
    const auto hist = frobenius_histogram(spec, 1, 20000);
    CHECK(hist.degree == 2);
    CHECK(hist.skipped == 0);
    const double freq2 = hist.frequency(CycleType({2}));
    CHECK(freq2 == doctest::Approx(0.5).epsilon(0.05));
    std::uint64_t total = 0;
    for (const auto& [t, c] : hist.counts) {
        CHECK(t.sum() == 2);
        total += c;
    }
    CHECK(total == hist.tallied());

    const auto hist2 = frobenius_histogram(spec, 2, 3000);
    for (const auto& [t, c] : hist2.counts) CHECK(t.sum() == 4);
}

TEST_CASE("scan density equals histogram full-degree frequency on the same range") {
    // same predicate through two routes: the norm-chain scan and the ddf types
    for (const char* tag : {"const:x^2-2", "random:2,2:11:3"}) {
        const auto spec = PolySeqSpec::parse(tag);
        const auto report = stable_scan(spec, 2, 5000);
        const auto hist = frobenius_histogram(spec, 2, 5000);
        CHECK(report.primes.size() - report.ramified_count() == hist.tallied());
        const std::uint64_t full_count =
            hist.counts.count(CycleType({4})) ? hist.counts.at(CycleType({4})) : 0;
        CHECK(report.count_at_level(2) == full_count);
        CHECK(report.density_at_level(2) ==
              doctest::Approx(hist.frequency(CycleType({4}))).epsilon(1e-12));
    }
}

TEST_CASE("wreath type distribution basics") {
    const auto d1 = wreath_type_distribution(SphericalIndex({2}), 100000, 5);
    CHECK(d1.frequency(CycleType({2})) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(d1.frequency(CycleType({1, 1})) == doctest::Approx(0.5).epsilon(0.02));

    const auto d2 = wreath_type_distribution(SphericalIndex({2, 2}), 200000, 5);
    CHECK(d2.frequency(CycleType({4})) == doctest::Approx(0.25).epsilon(0.03));

    // same estimator, same blocks: full-cycle mass equals the ratio estimate
    const auto est = estimate_full_cycle_ratio(SphericalIndex({2, 2}), 200000, 5);
    CHECK(d2.frequency(CycleType({4})) == doctest::Approx(est.ratio).epsilon(1e-12));
}

TEST_CASE("surjectivity score") {
    const auto ref = wreath_type_distribution(SphericalIndex({2, 2}), 200000, 5);
    CHECK(surjectivity_score(ref, ref).tv_distance == 0.0);

    // cyclic tower: far from the full dihedral reference
    const auto hist = frobenius_histogram(PolySeqSpec::parse("const:x^2-2"), 2, 20000);
    const auto score = surjectivity_score(hist, ref);
    CHECK(score.tv_distance >= 0.3);
    CHECK(score.full_cycle_pred == doctest::Approx(0.25));
    CHECK(score.full_cycle_emp == doctest::Approx(0.5).epsilon(0.05));

    // a dihedral-full sequence (x^2-3 composed with itself classifies D4):
    // close to the reference
    CHECK(galois_quartic(IntPoly::parse("x^4-6x^2+6")) == QuarticGaloisLabel::D4);
    const auto good = frobenius_histogram(PolySeqSpec::parse("const:x^2-3"), 2, 10000);
    CHECK(surjectivity_score(good, ref).tv_distance <= 0.1);

    const auto other = wreath_type_distribution(SphericalIndex({3}), 1000, 5);
    CHECK_THROWS_AS(surjectivity_score(hist, other), std::invalid_argument);
}

TEST_CASE("scans are thread-count invariant") {
    const auto spec = PolySeqSpec::parse("random:2,2:9:17");
    const auto a = stable_scan(spec, 2, 3000, 1);
    const auto b = stable_scan(spec, 2, 3000, 4);
    CHECK(a.max_level == b.max_level);
    const auto ha = frobenius_histogram(spec, 2, 3000, 1);
    const auto hb = frobenius_histogram(spec, 2, 3000, 4);
    CHECK(ha.counts == hb.counts);
    const auto wa = wreath_type_distribution(SphericalIndex({2, 2}), 70000, 5, 1);
    const auto wb = wreath_type_distribution(SphericalIndex({2, 2}), 70000, 5, 4);
    CHECK(wa.counts == wb.counts);
}

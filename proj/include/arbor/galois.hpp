#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbor/int_poly.hpp"
#include "arbor/spherical_index.hpp"

namespace arbor {

enum class QuadraticGaloisLabel { S2, Reducible };
enum class QuarticGaloisLabel { S4, A4, D4, C4, V4, Reducible };

const char* to_string(QuarticGaloisLabel label);

/// S2 iff the discriminant b^2 - 4c is not a perfect square.
QuadraticGaloisLabel galois_quadratic(const IntPoly& f);

/// Exact irreducibility over the rationals for a monic integer quartic
/// (equivalent to irreducibility over the integers). Tries small-prime
/// certificates first, then searches linear and quadratic integer factors.
bool is_irreducible_quartic_q(const IntPoly& f);

/// Classical resolvent-cubic classification of the Galois group of a monic
/// integer quartic. The C4/D4 split follows Kappe-Warren: with beta the
/// unique rational resolvent root, the group is C4 exactly when both
/// x^2 - beta x + d and x^2 + a x + (b - beta) split over Q(sqrt(disc)),
/// which reduces to integer perfect-square tests.
QuarticGaloisLabel galois_quartic(const IntPoly& f);

struct UnsupportedIndexExactMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Box-sampling result: how often the compositions of a random coefficient
/// tuple have the full tree automorphism group at every level.
struct BoxSampleReport {
    std::string index_desc;
    std::uint64_t box = 0;       // N
    std::uint64_t samples = 0;   // tuples examined ((2N+1)^(D_n) when exhaustive)
    bool exhaustive = false;
    bool exact_mode = true;
    std::vector<std::uint64_t> level_success; // Gal(f^(i)) == W_i, per level
    std::uint64_t all_success = 0;

    double fraction() const;
    double stderr_() const; // binomial sqrt(f(1-f)/samples)
    void write_csv(std::ostream& os) const;
    std::string to_json() const;
};

/// Exact mode; supported for indices (2) and (2,2), where the full images are
/// S2 and the dihedral group of order 8. samples = 0 runs the whole box
/// exhaustively. Throws UnsupportedIndexExactMode otherwise.
BoxSampleReport sample_generic_density_exact(const SphericalIndex& idx, std::uint64_t N,
                                             std::uint64_t samples, std::uint64_t seed,
                                             unsigned threads = 1);

struct HeuristicParams {
    std::uint64_t prime_bound = 2000;   // Frobenius statistics per sample
    std::uint64_t ref_samples = 200000; // wreath Monte Carlo reference
    std::uint64_t ref_seed = 1;
    double tv_threshold = 0.1; // success cutoff, an evidence heuristic only
};

/// Heuristic mode for any index: a sampled sequence counts as a success when
/// the total-variation distance between its decomposition-type statistics and
/// the W_i reference stays below the threshold at every level i <= n. This is
/// evidence of a full image, never a verdict.
BoxSampleReport sample_generic_density_heuristic(const SphericalIndex& idx, std::uint64_t N,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const HeuristicParams& params,
                                                 unsigned threads = 1);

struct GrowthCurvePoint {
    std::uint64_t box;
    std::uint64_t total;       // (2N+1)^4
    std::uint64_t exceptional; // tuples whose composition is not dihedral-full
    double exceptional_fraction;
};

struct GrowthCurve {
    std::vector<GrowthCurvePoint> points;
    /// Least-squares slope of log(exceptional) against log(N); absent when
    /// fewer than two points have nonzero counts.
    std::optional<double> fitted_slope;
    void write_csv(std::ostream& os) const;
    std::string to_json() const;
};

/// Exhaustive exceptional counts for index (2,2) over nested boxes. A single
/// pass over the largest box buckets every tuple by its smallest containing
/// box, so the nested counts come out exactly.
GrowthCurve exceptional_growth_curve(const std::vector<std::uint64_t>& boxes,
                                     unsigned threads = 1);

/// D4 decision for f1 o f2 with f1 = x^2 + b1 x + c1 (outer) and
/// f2 = x^2 + b2 x + c2. Fast path: integer discriminant prefilters plus
/// decomposition-type certificates mod small primes (an irreducible reduction
/// plus a (2,1,1) reduction force the full dihedral image); falls back to the
/// exact classifier when certificates stay silent.
bool composition_is_d4(std::int64_t b1, std::int64_t c1, std::int64_t b2, std::int64_t c2);

} // namespace arbor

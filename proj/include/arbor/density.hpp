#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "arbor/cycle_type.hpp"
#include "arbor/poly_seq.hpp"
#include "arbor/primes.hpp"
#include "arbor/spherical_index.hpp"

namespace arbor {

/// Value of max_level marking a prime excluded because some f^(n) mod p failed
/// the squarefree check. Such primes leave both numerator and denominator of
/// every density (there are finitely many; they divide discriminant-type
/// resultants of the tower).
constexpr std::int32_t kRamified = -1;

/// Per-prime irreducibility levels of a sequence over a prime range.
///
/// max_level[i] is the largest n <= n_max with f^(n) irreducible modulo
/// primes[i] (0 when f^(1) already factors), or kRamified. Counting and
/// densities are derived, with the denominator excluding ramified primes.
struct ScanReport {
    std::string spec_desc;
    std::uint32_t n_max = 0;
    std::uint64_t prime_bound = 0;
    std::vector<std::uint64_t> degrees; // d^(1), ..., d^(n_max)
    std::vector<std::uint32_t> primes;
    std::vector<std::int32_t> max_level;

    std::uint64_t ramified_count() const;
    std::uint64_t good_count() const { return primes.size() - ramified_count(); }
    /// #{good p : max_level >= n}.
    std::uint64_t count_at_level(std::uint32_t n) const;
    double density_at_level(std::uint32_t n) const;
    /// Full-image prediction 1/d^(n).
    double predicted_density(std::uint32_t n) const;
    /// True when at least one scanned prime keeps f^(n) irreducible, which
    /// certifies that f^(n) is irreducible over the rationals.
    bool irreducibility_evidence(std::uint32_t n) const { return count_at_level(n) > 0; }

    void write_csv(std::ostream& os) const;
    std::string to_json() const;
};

/// Scans all odd primes <= X. For each prime the compositions f^(1..n_max)
/// mod p are checked squarefree first (failures mark the prime ramified);
/// irreducibility is then decided level by level with early exit, since
/// reducibility is inherited upward along the tower.
ScanReport stable_scan(const PolySeqSpec& spec, std::uint32_t n_max, std::uint64_t X,
                       unsigned threads = 1);

/// Decomposition-type counts at one level over a prime range, or the
/// leaf-cycle-type distribution of uniform tree-automorphism samples (the
/// Monte Carlo reference the Frobenius statistics are compared against).
struct FrobHistogram {
    std::string source_desc;
    std::uint64_t degree = 0;
    std::uint64_t prime_bound = 0; // 0 for sampled references
    std::uint64_t scanned = 0;
    std::uint64_t skipped = 0;
    std::map<CycleType, std::uint64_t> counts;

    std::uint64_t tallied() const { return scanned - skipped; }
    double frequency(const CycleType& t) const;
    void write_csv(std::ostream& os) const;
    std::string to_json() const;
};

/// Tallies ddf types of f^(n) mod p over odd primes <= X. Primes where any
/// f^(k), k <= n, fails the squarefree check are skipped, matching the
/// exclusions of stable_scan so the two paths stay comparable.
FrobHistogram frobenius_histogram(const PolySeqSpec& spec, std::uint32_t n, std::uint64_t X,
                                  unsigned threads = 1);

/// Empirical leaf-cycle-type distribution over uniform W_n samples.
FrobHistogram wreath_type_distribution(const SphericalIndex& idx, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads = 1);

struct SurjectivityScore {
    double tv_distance;        // total variation in [0, 1]
    double full_cycle_emp;     // full-cycle frequency of the left histogram
    double full_cycle_ref;     // and of the reference
    double full_cycle_pred;    // 1/d^(n)
};

/// Total-variation distance between two type distributions of the same
/// degree, plus the full-cycle-frequency comparison. By the Frobenius density
/// theorem a sequence with full tree image produces types following the W_n
/// distribution, so small distances are evidence (never proof) of a full
/// image.
SurjectivityScore surjectivity_score(const FrobHistogram& hist, const FrobHistogram& ref);

} // namespace arbor

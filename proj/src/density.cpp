#include "arbor/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "arbor/numeric.hpp"
#include "arbor/parallel.hpp"
#include "arbor/wreath.hpp"
#include "json.hpp"

namespace arbor {

namespace {

constexpr std::uint64_t kPrimeChunk = 512;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

/// Irreducibility of g o f_n given that g (monic, degree M) is irreducible
/// mod p and f_n = x^2 + bx + c. By Capelli the composition is irreducible
/// iff b^2 - 4c + 4*alpha is a non-square in F_p(alpha), and the quadratic
/// character of a norm drops to the base field, so the test is one Legendre
/// symbol of (-4)^M * g(-(b^2-4c)/4) mod p.
bool quadratic_step_irreducible(const FpPoly& g, std::uint64_t b, std::uint64_t c,
                                std::uint64_t M, std::uint64_t p) {
    const std::uint64_t u = submod(mulmod(b, b, p), mulmod(4 % p, c, p), p);
    const std::uint64_t arg = submod(0, mulmod(u, invmod(4 % p, p), p), p);
    const std::uint64_t norm = mulmod(powmod(p - (4 % p), M, p), g.eval(arg), p);
    const int chi = jacobi(norm, p);
    if (chi == 0)
        throw std::logic_error("quadratic_step_irreducible: zero norm on a squarefree level");
    return chi == -1;
}

struct PerPrime {
    std::int32_t max_level;
};

/// Squarefree pass plus level-by-level irreducibility for one prime.
std::int32_t scan_one_prime(const std::vector<IntPoly>& members, std::uint32_t n_max,
                            std::uint32_t p32) {
    const PrimeModulus p(p32);
    std::vector<FpPoly> reduced;
    reduced.reserve(n_max);
    for (std::uint32_t k = 0; k < n_max; ++k) reduced.push_back(members[k].reduce_mod(p));

    // All compositions must be squarefree mod p, or the prime is set aside.
    std::vector<FpPoly> composed;
    composed.reserve(n_max);
    for (std::uint32_t n = 0; n < n_max; ++n) {
        composed.push_back(n == 0 ? reduced[0] : composed[n - 1].compose(reduced[n]));
        if (!is_squarefree(composed[n])) return kRamified;
    }

    std::int32_t level = 0;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        const FpPoly& g = composed[n - 1];
        const std::uint32_t dn = static_cast<std::uint32_t>(reduced[n - 1].degree());
        bool irreducible;
        if (dn == 1) {
            irreducible = true;
        } else if (dn == 2) {
            if (n == 1) {
                const std::uint64_t disc = submod(mulmod(g.coeff(1), g.coeff(1), p32),
                                                  mulmod(4 % p32, g.coeff(0), p32), p32);
                irreducible = jacobi(disc, p32) == -1;
            } else {
                irreducible = quadratic_step_irreducible(composed[n - 2], reduced[n - 1].coeff(1),
                                                         reduced[n - 1].coeff(0),
                                                         static_cast<std::uint64_t>(composed[n - 2].degree()),
                                                         p32);
            }
        } else {
            irreducible = is_irreducible(g);
        }
        if (!irreducible) break;
        level = static_cast<std::int32_t>(n);
    }
    return level;
}

} // namespace

std::uint64_t ScanReport::ramified_count() const {
    return static_cast<std::uint64_t>(std::count(max_level.begin(), max_level.end(), kRamified));
}

std::uint64_t ScanReport::count_at_level(std::uint32_t n) const {
    std::uint64_t c = 0;
    for (std::int32_t lv : max_level)
        if (lv != kRamified && lv >= static_cast<std::int32_t>(n)) ++c;
    return c;
}

double ScanReport::density_at_level(std::uint32_t n) const {
    const std::uint64_t good = good_count();
    if (good == 0) return 0.0;
    return static_cast<double>(count_at_level(n)) / static_cast<double>(good);
}

double ScanReport::predicted_density(std::uint32_t n) const {
    if (n == 0 || n > degrees.size()) throw std::invalid_argument("predicted_density: bad level");
    return 1.0 / static_cast<double>(degrees[n - 1]);
}

void ScanReport::write_csv(std::ostream& os) const {
    os << "level,degree,prime_bound,scanned,ramified,count,density,predicted,evidence\n";
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        os << n << ',' << degrees[n - 1] << ',' << prime_bound << ',' << primes.size() << ','
           << ramified_count() << ',' << count_at_level(n) << ',' << fmt_double(density_at_level(n))
           << ',' << fmt_double(predicted_density(n)) << ','
           << (irreducibility_evidence(n) ? "yes" : "no") << '\n';
    }
}

std::string ScanReport::to_json() const {
    nlohmann::json levels = nlohmann::json::array();
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        levels.push_back({{"level", n},
                          {"degree", degrees[n - 1]},
                          {"count", count_at_level(n)},
                          {"density", density_at_level(n)},
                          {"predicted", predicted_density(n)},
                          {"evidence", irreducibility_evidence(n)}});
    }
    nlohmann::json j{{"spec", spec_desc},
                     {"n_max", n_max},
                     {"prime_bound", prime_bound},
                     {"scanned", primes.size()},
                     {"ramified", ramified_count()},
                     {"levels", levels}};
    return j.dump(2);
}

ScanReport stable_scan(const PolySeqSpec& spec, std::uint32_t n_max, std::uint64_t X,
                       unsigned threads) {
    if (n_max < 1) throw std::invalid_argument("stable_scan: n_max must be >= 1");
    if (auto len = spec.length(); len && n_max > *len)
        throw std::invalid_argument("stable_scan: n_max exceeds sequence length");

    ScanReport report;
    report.spec_desc = spec.describe();
    report.n_max = n_max;
    report.prime_bound = X;
    for (std::uint32_t n = 1; n <= n_max; ++n) report.degrees.push_back(spec.composed_degree(n));
    report.primes = sieve_primes(X).primes;
    report.max_level.assign(report.primes.size(), 0);

    std::vector<IntPoly> members;
    members.reserve(n_max);
    for (std::uint32_t k = 1; k <= n_max; ++k) members.push_back(spec.nth(k));

    const std::uint64_t total = report.primes.size();
    const std::uint64_t chunks = (total + kPrimeChunk - 1) / kPrimeChunk;
    run_chunks(chunks, threads, [&](std::uint64_t c) {
        const std::uint64_t lo = c * kPrimeChunk;
        const std::uint64_t hi = std::min(total, lo + kPrimeChunk);
        for (std::uint64_t i = lo; i < hi; ++i)
            report.max_level[i] = scan_one_prime(members, n_max, report.primes[i]);
    });
    return report;
}

double FrobHistogram::frequency(const CycleType& t) const {
    const std::uint64_t denom = tallied();
    if (denom == 0) return 0.0;
    auto it = counts.find(t);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(denom);
}

void FrobHistogram::write_csv(std::ostream& os) const {
    os << "type,count,frequency\n";
    for (const auto& [type, count] : counts)
        os << type.to_string() << ',' << count << ',' << fmt_double(frequency(type)) << '\n';
}

std::string FrobHistogram::to_json() const {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [type, count] : counts) c[type.to_string()] = count;
    nlohmann::json j{{"source", source_desc}, {"degree", degree},   {"prime_bound", prime_bound},
                     {"scanned", scanned},    {"skipped", skipped}, {"counts", c}};
    return j.dump(2);
}

FrobHistogram frobenius_histogram(const PolySeqSpec& spec, std::uint32_t n, std::uint64_t X,
                                  unsigned threads) {
    if (n < 1) throw std::invalid_argument("frobenius_histogram: level must be >= 1");
    if (auto len = spec.length(); len && n > *len)
        throw std::invalid_argument("frobenius_histogram: level exceeds sequence length");

    FrobHistogram hist;
    hist.source_desc = spec.describe();
    hist.degree = spec.composed_degree(n);
    hist.prime_bound = X;

    std::vector<IntPoly> members;
    for (std::uint32_t k = 1; k <= n; ++k) members.push_back(spec.nth(k));

    const auto primes = sieve_primes(X).primes;
    const std::uint64_t total = primes.size();
    const std::uint64_t chunks = (total + kPrimeChunk - 1) / kPrimeChunk;
    std::vector<std::map<CycleType, std::uint64_t>> chunk_counts(chunks);
    std::vector<std::uint64_t> chunk_skipped(chunks, 0);

    run_chunks(chunks, threads, [&](std::uint64_t c) {
        const std::uint64_t lo = c * kPrimeChunk;
        const std::uint64_t hi = std::min(total, lo + kPrimeChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const PrimeModulus p(primes[i]);
            FpPoly g;
            bool skip = false;
            for (std::uint32_t k = 0; k < n; ++k) {
                const FpPoly fk = members[k].reduce_mod(p);
                g = k == 0 ? fk : g.compose(fk);
                if (!is_squarefree(g)) {
                    skip = true;
                    break;
                }
            }
            if (skip) {
                ++chunk_skipped[c];
                continue;
            }
            ++chunk_counts[c][ddf_type(g)];
        }
    });

    hist.scanned = total;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        hist.skipped += chunk_skipped[c];
        for (const auto& [type, count] : chunk_counts[c]) hist.counts[type] += count;
    }
    return hist;
}

FrobHistogram wreath_type_distribution(const SphericalIndex& idx, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads) {
    if (samples == 0) throw std::invalid_argument("wreath_type_distribution: samples must be >= 1");
    FrobHistogram hist;
    hist.source_desc = "wreath:" + idx.to_string();
    hist.degree = idx.leaf_count();
    hist.prime_bound = 0;

    constexpr std::uint64_t kBlock = 1 << 16;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::map<CycleType, std::uint64_t>> block_counts(blocks);
    run_chunks(blocks, threads, [&](std::uint64_t b) {
        Rng rng(Rng::derive(seed, b));
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        for (std::uint64_t s = lo; s < hi; ++s)
            ++block_counts[b][WreathElement::random(idx, rng).leaf_cycle_type()];
    });

    hist.scanned = samples;
    for (const auto& bc : block_counts)
        for (const auto& [type, count] : bc) hist.counts[type] += count;
    return hist;
}

SurjectivityScore surjectivity_score(const FrobHistogram& hist, const FrobHistogram& ref) {
    if (hist.degree != ref.degree)
        throw std::invalid_argument("surjectivity_score: degree mismatch");
    double tv = 0.0;
    auto it = hist.counts.begin();
    auto jt = ref.counts.begin();
    while (it != hist.counts.end() || jt != ref.counts.end()) {
        if (jt == ref.counts.end() || (it != hist.counts.end() && it->first < jt->first)) {
            tv += hist.frequency(it->first);
            ++it;
        } else if (it == hist.counts.end() || jt->first < it->first) {
            tv += ref.frequency(jt->first);
            ++jt;
        } else {
            tv += std::abs(hist.frequency(it->first) - ref.frequency(jt->first));
            ++it;
            ++jt;
        }
    }
    tv /= 2.0;
    const CycleType full(std::vector<std::uint64_t>{hist.degree});
    return SurjectivityScore{tv, hist.frequency(full), ref.frequency(full),
                             1.0 / static_cast<double>(hist.degree)};
}

} // namespace arbor

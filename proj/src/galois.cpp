#include "arbor/galois.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "arbor/density.hpp"
#include "arbor/fp_poly.hpp"
#include "arbor/numeric.hpp"
#include "arbor/parallel.hpp"
#include "arbor/poly_seq.hpp"
#include "arbor/rng.hpp"
#include "json.hpp"

namespace arbor {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

bool is_square_i128(i128 v) {
    if (v < 0) return false;
    if (v == 0) return true;
    i128 s = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (s > 0 && s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s * s == v;
}

/// Discriminant of a monic quartic x^4 + ax^3 + bx^2 + cx + d. Safe in i128
/// for coefficient magnitudes up to ~10^6.
i128 disc_quartic_i128(i128 a, i128 b, i128 c, i128 d) {
    return 256 * d * d * d - 192 * a * c * d * d - 128 * b * b * d * d + 144 * a * a * b * d * d -
           27 * a * a * a * a * d * d + 144 * b * c * c * d - 6 * a * a * c * c * d -
           80 * a * b * b * c * d + 18 * a * a * a * b * c * d + 16 * b * b * b * b * d -
           4 * a * a * b * b * b * d - 27 * c * c * c * c + 18 * a * b * c * c * c -
           4 * a * a * a * c * c * c - 4 * b * b * b * c * c + a * a * b * b * c * c;
}

constexpr std::array<std::uint32_t, 35> kCertPrimes = {
    3,  5,  7,  11, 13, 17, 19, 23,  29,  31,  37,  41,  43,  47,  53,  59,  61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151};

/// Decomposition type class of a quartic mod p needed by the certificates:
/// returns 4 for an irreducible reduction, 2 for type (2,1,1), 0 otherwise
/// (including non-squarefree reductions, which are skipped).
int quartic_type_class(i64 a, i64 b, i64 c, i64 d, std::uint32_t p32) {
    const PrimeModulus p(p32);
    const FpPoly g(p, {d, c, b, a, 1});
    if (g.degree() != 4) return 0;
    if (!is_squarefree(g)) return 0;
    const FpPoly x = FpPoly::x(p);
    const FpPoly u = x.powmod(p32, g);
    const int roots = u.sub(x).gcd(g).degree();
    if (roots == 2) return 2; // two roots plus an (automatically irreducible) quadratic
    if (roots == 0) {
        const FpPoly u2 = u.powmod(p32, g); // x^(p^2) mod g
        if (u2.sub(x).gcd(g).degree() == 0) return 4;
    }
    return 0;
}

IntPoly composed_quartic(i64 b1, i64 c1, i64 b2, i64 c2) {
    return IntPoly::from_int64({c2 * c2 + b1 * c2 + c1, 2 * b2 * c2 + b1 * b2,
                                b2 * b2 + 2 * c2 + b1, 2 * b2, 1});
}

/// All integer roots of a monic cubic y^3 + r2 y^2 + r1 y + r0 with nonzero
/// discriminant, by exact sign-change bisection over the monotone pieces cut
/// at the critical points. Works at any coefficient size.
std::vector<bigint> monic_cubic_integer_roots(const bigint& r2, const bigint& r1,
                                              const bigint& r0) {
    auto eval = [&](const bigint& y) { return ((y + r2) * y + r1) * y + r0; };

    bigint B = 1;
    for (const bigint* c : {&r2, &r1, &r0}) {
        const bigint a = boost::multiprecision::abs(*c);
        if (a > B) B = a;
    }
    B += 1;

    std::vector<bigint> breakpoints{-B, B};
    const bigint disc_d = 4 * r2 * r2 - 12 * r1;
    if (disc_d > 0) {
        const bigint s = boost::multiprecision::sqrt(disc_d);
        const bigint lo_num = -2 * r2 - s, hi_num = -2 * r2 + s;
        for (const bigint* num : {&lo_num, &hi_num}) {
            const bigint q = *num / 6; // round both ways; the slop is covered by direct evaluation
            for (int off = -1; off <= 1; ++off) {
                const bigint cand = q + off;
                if (cand > -B && cand < B) breakpoints.push_back(cand);
            }
        }
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::vector<bigint> roots;
    auto push_root = [&](const bigint& y) {
        if (std::find(roots.begin(), roots.end(), y) == roots.end()) roots.push_back(y);
    };
    std::vector<bigint> values;
    values.reserve(breakpoints.size());
    for (const bigint& y : breakpoints) {
        const bigint v = eval(y);
        if (v == 0) push_root(y);
        values.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (values[i] == 0 || values[i + 1] == 0) continue;
        if ((values[i] < 0) == (values[i + 1] < 0)) continue;
        bigint lo = breakpoints[i], hi = breakpoints[i + 1];
        bool lo_neg = values[i] < 0;
        while (hi - lo > 1) {
            const bigint mid = (lo + hi) / 2;
            const bigint v = eval(mid);
            if (v == 0) {
                lo = mid;
                break;
            }
            if ((v < 0) == lo_neg)
                lo = mid;
            else
                hi = mid;
        }
        if (eval(lo) == 0) push_root(lo);
        if (eval(hi) == 0) push_root(hi);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<bigint> positive_divisors(const bigint& n) {
    const bigint a = boost::multiprecision::abs(n);
    std::vector<bigint> out;
    for (bigint i = 1; i * i <= a; ++i) {
        if (a % i == 0) {
            out.push_back(i);
            if (i * i != a) out.push_back(a / i);
        }
    }
    return out;
}

void require_monic_degree(const IntPoly& f, int degree, const char* who) {
    if (f.degree() != degree || !f.is_monic())
        throw std::invalid_argument(std::string(who) + ": need a monic polynomial of degree " +
                                    std::to_string(degree));
}

} // namespace

const char* to_string(QuarticGaloisLabel label) {
    switch (label) {
        case QuarticGaloisLabel::S4: return "S4";
        case QuarticGaloisLabel::A4: return "A4";
        case QuarticGaloisLabel::D4: return "D4";
        case QuarticGaloisLabel::C4: return "C4";
        case QuarticGaloisLabel::V4: return "V4";
        case QuarticGaloisLabel::Reducible: return "Reducible";
    }
    return "?";
}

QuadraticGaloisLabel galois_quadratic(const IntPoly& f) {
    require_monic_degree(f, 2, "galois_quadratic");
    const bigint disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(0);
    return is_perfect_square(disc) ? QuadraticGaloisLabel::Reducible : QuadraticGaloisLabel::S2;
}

bool is_irreducible_quartic_q(const IntPoly& f) {
    require_monic_degree(f, 4, "is_irreducible_quartic_q");
    const bigint &d = f.coeff(0), &c = f.coeff(1), &b = f.coeff(2), &a = f.coeff(3);
    if (d == 0) return false; // x divides f

    // A squarefree irreducible reduction certifies irreducibility over Z.
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        const FpPoly g = f.reduce_mod(PrimeModulus(p));
        if (g.degree() == 4 && is_squarefree(g) && is_irreducible(g)) return true;
    }

    // Linear factors: integer roots divide the constant term.
    for (const bigint& v : positive_divisors(d)) {
        const bigint neg = -v;
        if (f.eval(v) == 0 || f.eval(neg) == 0) return false;
    }
    // Quadratic factors (x^2+ux+v)(x^2+wx+z): v z = d, u + w = a,
    // u w = b - v - z, u z + v w = c.
    for (const bigint& v0 : positive_divisors(d)) {
        const bigint neg_v0 = -v0;
        for (const bigint* vp : {&v0, &neg_v0}) {
            const bigint& v = *vp;
            const bigint z = d / v;
            const bigint disc_t = a * a - 4 * (b - v - z);
            if (!is_perfect_square(disc_t)) continue;
            const bigint s = boost::multiprecision::sqrt(disc_t);
            const bigint up = a + s, um = a - s;
            for (const bigint* tu : {&up, &um}) {
                if (*tu % 2 != 0) continue;
                const bigint u = *tu / 2, w = a - u;
                if (u * z + v * w == c) return false;
            }
        }
    }
    return true;
}

QuarticGaloisLabel galois_quartic(const IntPoly& f) {
    require_monic_degree(f, 4, "galois_quartic");
    if (!is_irreducible_quartic_q(f)) return QuarticGaloisLabel::Reducible;
    const bigint &d = f.coeff(0), &c = f.coeff(1), &b = f.coeff(2), &a = f.coeff(3);
    const bigint D = discriminant(f);
    if (D == 0) throw std::logic_error("galois_quartic: zero discriminant on an irreducible input");

    // Resolvent cubic y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2); its
    // discriminant equals D, so its roots are simple.
    const auto roots =
        monic_cubic_integer_roots(-b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c));
    if (roots.empty()) return is_perfect_square(D) ? QuarticGaloisLabel::A4 : QuarticGaloisLabel::S4;
    if (roots.size() == 3) return QuarticGaloisLabel::V4;
    if (roots.size() != 1) throw std::logic_error("galois_quartic: impossible resolvent root count");

    const bigint& beta = roots[0];
    const bigint d1 = beta * beta - 4 * d;
    const bigint d2 = a * a - 4 * (b - beta);
    const bool splits1 = d1 == 0 || is_perfect_square(d1) || is_perfect_square(d1 * D);
    const bool splits2 = d2 == 0 || is_perfect_square(d2) || is_perfect_square(d2 * D);
    return splits1 && splits2 ? QuarticGaloisLabel::C4 : QuarticGaloisLabel::D4;
}

bool composition_is_d4(i64 b1, i64 c1, i64 b2, i64 c2) {
    // Coefficient magnitudes stay printable in i128 for boxes up to ~10^6.
    const i64 a = 2 * b2;
    const i64 b = b2 * b2 + 2 * c2 + b1;
    const i64 c = 2 * b2 * c2 + b1 * b2;
    const i64 d = c2 * c2 + b1 * c2 + c1;

    // The dihedral image needs f1 irreducible and a nonsquare quartic
    // discriminant; both are cheap integer prefilters.
    if (is_square_i128(i128(b1) * b1 - i128(4) * c1)) return false;
    const i128 D = disc_quartic_i128(a, b, c, d);
    if (D == 0 || is_square_i128(D)) return false;

    bool saw4 = false, saw211 = false;
    for (std::uint32_t p : kCertPrimes) {
        switch (quartic_type_class(a, b, c, d, p)) {
            case 4: saw4 = true; break;
            case 2: saw211 = true; break;
            default: break;
        }
        if (saw4 && saw211) return true;
    }
    return galois_quartic(composed_quartic(b1, c1, b2, c2)) == QuarticGaloisLabel::D4;
}

double BoxSampleReport::fraction() const {
    return samples == 0 ? 0.0
                        : static_cast<double>(all_success) / static_cast<double>(samples);
}

double BoxSampleReport::stderr_() const {
    if (samples == 0) return 0.0;
    const double f = fraction();
    return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
}

void BoxSampleReport::write_csv(std::ostream& os) const {
    os << "index,box,samples,exhaustive,mode,";
    for (std::size_t i = 0; i < level_success.size(); ++i) os << "level" << i + 1 << "_success,";
    os << "all_success,fraction,stderr\n";
    os << csv_field(index_desc) << ',' << box << ',' << samples << ','
       << (exhaustive ? "yes" : "no") << ','
       << (exact_mode ? "exact" : "heuristic") << ',';
    for (std::uint64_t s : level_success) os << s << ',';
    os << all_success << ',' << fmt_double(fraction()) << ',' << fmt_double(stderr_()) << '\n';
}

std::string BoxSampleReport::to_json() const {
    nlohmann::json j{{"index", index_desc},
                     {"box", box},
                     {"samples", samples},
                     {"exhaustive", exhaustive},
                     {"mode", exact_mode ? "exact" : "heuristic"},
                     {"level_success", level_success},
                     {"all_success", all_success},
                     {"fraction", fraction()},
                     {"stderr", stderr_()}};
    return j.dump(2);
}

namespace {

BoxSampleReport exact_quadratic_box(std::uint64_t N, std::uint64_t samples, std::uint64_t seed,
                                    unsigned threads) {
    BoxSampleReport report;
    report.index_desc = "2";
    report.box = N;
    report.exact_mode = true;
    report.level_success.assign(1, 0);

    auto s2 = [](i64 b, i64 c) { return !is_square_i128(i128(b) * b - i128(4) * c); };

    if (samples == 0) {
        const std::uint64_t side = 2 * N + 1;
        report.exhaustive = true;
        report.samples = side * side;
        std::uint64_t hits = 0;
        const i64 n = static_cast<i64>(N);
        for (i64 b = -n; b <= n; ++b)
            for (i64 c = -n; c <= n; ++c)
                if (s2(b, c)) ++hits;
        report.level_success[0] = hits;
        report.all_success = hits;
        return report;
    }

    report.samples = samples;
    constexpr std::uint64_t kBlock = 1 << 14;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> hits(blocks, 0);
    run_chunks(blocks, threads, [&](std::uint64_t blk) {
        Rng rng(Rng::derive(seed, blk));
        const std::uint64_t lo = blk * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        std::uint64_t h = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const i64 b = rng.symmetric(N), c = rng.symmetric(N);
            if (s2(b, c)) ++h;
        }
        hits[blk] = h;
    });
    for (std::uint64_t h : hits) report.all_success += h;
    report.level_success[0] = report.all_success;
    return report;
}

struct QuarticBoxCounts {
    std::uint64_t level1 = 0; // f1 irreducible
    std::uint64_t d4 = 0;     // composition dihedral-full
};

/// Exhaustive pass over the (2N+1)^4 box, bucketing each tuple by the
/// smallest box containing it so nested counts fall out of one run.
std::vector<QuarticBoxCounts> exhaustive_quartic_buckets(std::uint64_t N, unsigned threads) {
    if (N > 10000) throw std::invalid_argument("exhaustive box too large (N <= 10000)");
    const i64 n = static_cast<i64>(N);
    const std::uint64_t side = 2 * N + 1;
    std::vector<std::vector<QuarticBoxCounts>> per_chunk(side,
                                                         std::vector<QuarticBoxCounts>(N + 1));
    run_chunks(side, threads, [&](std::uint64_t chunk) {
        auto& buckets = per_chunk[chunk];
        const i64 b1 = static_cast<i64>(chunk) - n;
        for (i64 c1 = -n; c1 <= n; ++c1) {
            const bool lvl1 =
                !is_square_i128(i128(b1) * b1 - i128(4) * c1);
            for (i64 b2 = -n; b2 <= n; ++b2) {
                for (i64 c2 = -n; c2 <= n; ++c2) {
                    const i64 m = std::max(std::max(std::abs(b1), std::abs(c1)),
                                           std::max(std::abs(b2), std::abs(c2)));
                    auto& bucket = buckets[static_cast<std::size_t>(m)];
                    if (lvl1) ++bucket.level1;
                    if (lvl1 && composition_is_d4(b1, c1, b2, c2)) ++bucket.d4;
                }
            }
        }
    });
    std::vector<QuarticBoxCounts> total(N + 1);
    for (const auto& chunk : per_chunk)
        for (std::size_t m = 0; m <= N; ++m) {
            total[m].level1 += chunk[m].level1;
            total[m].d4 += chunk[m].d4;
        }
    // prefix sums: counts for the box of radius m
    for (std::size_t m = 1; m <= N; ++m) {
        total[m].level1 += total[m - 1].level1;
        total[m].d4 += total[m - 1].d4;
    }
    return total;
}

BoxSampleReport exact_quartic_box(std::uint64_t N, std::uint64_t samples, std::uint64_t seed,
                                  unsigned threads) {
    BoxSampleReport report;
    report.index_desc = "2,2";
    report.box = N;
    report.exact_mode = true;
    report.level_success.assign(2, 0);

    if (samples == 0) {
        report.exhaustive = true;
        const std::uint64_t side = 2 * N + 1;
        report.samples = side * side * side * side;
        const auto buckets = exhaustive_quartic_buckets(N, threads);
        report.level_success[0] = buckets[N].level1;
        report.level_success[1] = buckets[N].d4;
        report.all_success = buckets[N].d4;
        return report;
    }

    report.samples = samples;
    constexpr std::uint64_t kBlock = 1 << 12;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<QuarticBoxCounts> counts(blocks);
    run_chunks(blocks, threads, [&](std::uint64_t blk) {
        Rng rng(Rng::derive(seed, blk));
        const std::uint64_t lo = blk * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const i64 b1 = rng.symmetric(N), c1 = rng.symmetric(N);
            const i64 b2 = rng.symmetric(N), c2 = rng.symmetric(N);
            const bool lvl1 = !is_square_i128(i128(b1) * b1 - i128(4) * c1);
            if (!lvl1) continue;
            ++counts[blk].level1;
            if (composition_is_d4(b1, c1, b2, c2)) ++counts[blk].d4;
        }
    });
    for (const auto& c : counts) {
        report.level_success[0] += c.level1;
        report.level_success[1] += c.d4;
    }
    report.all_success = report.level_success[1];
    return report;
}

} // namespace

BoxSampleReport sample_generic_density_exact(const SphericalIndex& idx, std::uint64_t N,
                                             std::uint64_t samples, std::uint64_t seed,
                                             unsigned threads) {
    if (idx.degrees() == std::vector<std::uint32_t>{2})
        return exact_quadratic_box(N, samples, seed, threads);
    if (idx.degrees() == std::vector<std::uint32_t>{2, 2})
        return exact_quartic_box(N, samples, seed, threads);
    throw UnsupportedIndexExactMode(
        "exact mode supports indices (2) and (2,2); use heuristic mode for " + idx.to_string());
}

BoxSampleReport sample_generic_density_heuristic(const SphericalIndex& idx, std::uint64_t N,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const HeuristicParams& params, unsigned threads) {
    if (samples == 0)
        throw std::invalid_argument("heuristic mode needs an explicit sample count");
    BoxSampleReport report;
    report.index_desc = idx.to_string();
    report.box = N;
    report.samples = samples;
    report.exact_mode = false;
    const std::size_t n = idx.levels();
    report.level_success.assign(n, 0);

    std::vector<FrobHistogram> refs;
    refs.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        refs.push_back(wreath_type_distribution(idx.prefix(i), params.ref_samples, params.ref_seed,
                                                threads));

    for (std::uint64_t s = 0; s < samples; ++s) {
        Rng rng(Rng::derive(seed, s));
        std::vector<IntPoly> polys;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<bigint> tail(idx.degree(i));
            for (auto& a : tail) a = rng.symmetric(N);
            polys.push_back(IntPoly::monic_from_tail(tail));
        }
        const PolySeqSpec spec = PolySeqSpec::explicit_list(polys);
        bool all = true;
        for (std::size_t i = 1; i <= n; ++i) {
            const FrobHistogram hist =
                frobenius_histogram(spec, static_cast<std::uint32_t>(i), params.prime_bound,
                                    threads);
            const bool pass = surjectivity_score(hist, refs[i - 1]).tv_distance <=
                              params.tv_threshold;
            if (pass) ++report.level_success[i - 1];
            all = all && pass;
        }
        if (all) ++report.all_success;
    }
    return report;
}

void GrowthCurve::write_csv(std::ostream& os) const {
    os << "box,total,exceptional,exceptional_fraction\n";
    for (const auto& p : points)
        os << p.box << ',' << p.total << ',' << p.exceptional << ','
           << fmt_double(p.exceptional_fraction) << '\n';
    if (fitted_slope) os << "# log-log slope," << fmt_double(*fitted_slope) << '\n';
}

std::string GrowthCurve::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points)
        pts.push_back({{"box", p.box},
                       {"total", p.total},
                       {"exceptional", p.exceptional},
                       {"exceptional_fraction", p.exceptional_fraction}});
    nlohmann::json j{{"points", pts}};
    if (fitted_slope) j["fitted_slope"] = *fitted_slope;
    return j.dump(2);
}

GrowthCurve exceptional_growth_curve(const std::vector<std::uint64_t>& boxes, unsigned threads) {
    if (boxes.empty()) throw std::invalid_argument("exceptional_growth_curve: empty box list");
    std::vector<std::uint64_t> sorted = boxes;
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t n_max = sorted.back();
    const auto buckets = exhaustive_quartic_buckets(n_max, threads);

    GrowthCurve curve;
    for (std::uint64_t N : sorted) {
        const std::uint64_t side = 2 * N + 1;
        const std::uint64_t total = side * side * side * side;
        const std::uint64_t exceptional = total - buckets[N].d4;
        curve.points.push_back(
            {N, total, exceptional,
             static_cast<double>(exceptional) / static_cast<double>(total)});
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& p : curve.points) {
        if (p.exceptional == 0 || p.box == 0) continue;
        const double x = std::log(static_cast<double>(p.box));
        const double y = std::log(static_cast<double>(p.exceptional));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (k >= 2 && sxx * k - sx * sx != 0.0)
        curve.fitted_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return curve;
}

} // namespace arbor

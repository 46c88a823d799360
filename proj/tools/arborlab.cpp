#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "arbor/density.hpp"
#include "arbor/galois.hpp"
#include "arbor/parallel.hpp"
#include "arbor/poly_seq.hpp"
#include "arbor/wreath.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

struct Output {
    std::string path; // empty = stdout
    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + path);
        out << text;
    }
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

arbor::SphericalIndex parse_index(const std::string& text) {
    return arbor::SphericalIndex::parse(text);
}

void cmd_wreath_count(const std::string& index, const std::string& format, const Output& out) {
    const auto idx = parse_index(index);
    const auto order = arbor::group_order(idx);
    const auto cycles = arbor::full_cycle_count(idx);
    const std::string ratio = "1/" + std::to_string(idx.leaf_count());
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j{{"index", idx.to_string()},
                         {"order", order.str()},
                         {"full_cycles", cycles.str()},
                         {"leaf_count", idx.leaf_count()},
                         {"ratio", ratio}};
        os << j.dump(2) << '\n';
    } else {
        os << "index,order,full_cycles,leaf_count,ratio\n";
        os << csv_field(idx.to_string()) << ',' << order.str() << ',' << cycles.str() << ','
           << idx.leaf_count() << ',' << ratio << '\n';
    }
    out.emit(os.str());
}

void cmd_wreath_enumerate(const std::string& index, std::uint64_t limit, const std::string& format,
                          const Output& out) {
    const auto idx = parse_index(index);
    if (arbor::group_order(idx) > limit)
        throw arbor::OrderExceedsLimit("group order exceeds --limit " + std::to_string(limit));
    std::ostringstream os;
    arbor::WreathEnumerator en(idx);
    if (format == "json") {
        while (const arbor::WreathElement* e = en.next()) os << e->to_json() << '\n';
    } else {
        os << "ordinal,cycle_type,full_cycle\n";
        std::uint64_t ordinal = 0;
        while (const arbor::WreathElement* e = en.next()) {
            os << ordinal++ << ',' << e->leaf_cycle_type().to_string() << ','
               << (e->is_full_cycle_recursive() ? "yes" : "no") << '\n';
        }
    }
    out.emit(os.str());
}

void cmd_wreath_sample_ratio(const std::string& index, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads, const std::string& format, const Output& out) {
    const auto idx = parse_index(index);
    const auto est = arbor::estimate_full_cycle_ratio(idx, samples, seed, threads);
    const double predicted = 1.0 / static_cast<double>(idx.leaf_count());
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j{{"index", idx.to_string()}, {"samples", est.samples},
                         {"seed", seed},             {"hits", est.hits},
                         {"ratio", est.ratio},       {"stderr", est.stderr_},
                         {"predicted", predicted}};
        os << j.dump(2) << '\n';
    } else {
        os << "index,samples,seed,hits,ratio,stderr,predicted\n";
        os << csv_field(idx.to_string()) << ',' << est.samples << ',' << seed << ',' << est.hits << ','
           << fmt_double(est.ratio) << ',' << fmt_double(est.stderr_) << ','
           << fmt_double(predicted) << '\n';
    }
    out.emit(os.str());
}

void cmd_scan_stable(const std::string& spec_tag, std::uint32_t n_max, std::uint64_t p_max,
                     unsigned threads, const std::string& format, const Output& out) {
    const auto spec = arbor::PolySeqSpec::parse(spec_tag);
    std::cerr << "scan: spec=" << spec.describe() << " n_max=" << n_max << " p_max=" << p_max
              << "\n";
    const auto report = arbor::stable_scan(spec, n_max, p_max, threads);
    std::cerr << "scan: " << report.primes.size() << " primes, " << report.ramified_count()
              << " ramified\n";
    std::ostringstream os;
    if (format == "json") {
        os << report.to_json() << '\n';
    } else {
        report.write_csv(os);
    }
    out.emit(os.str());
}

void cmd_frob_hist(const std::string& spec_tag, std::uint32_t level, std::uint64_t p_max,
                   unsigned threads, const std::string& format, const Output& out) {
    const auto spec = arbor::PolySeqSpec::parse(spec_tag);
    const auto hist = arbor::frobenius_histogram(spec, level, p_max, threads);
    std::ostringstream os;
    if (format == "json") {
        os << hist.to_json() << '\n';
    } else {
        hist.write_csv(os);
    }
    out.emit(os.str());
}

void cmd_frob_compare(const std::string& spec_tag, std::uint32_t level, std::uint64_t p_max,
                      std::uint64_t samples, std::uint64_t seed, unsigned threads,
                      const std::string& format, const Output& out) {
    const auto spec = arbor::PolySeqSpec::parse(spec_tag);
    std::vector<std::uint32_t> degrees;
    for (std::uint32_t k = 1; k <= level; ++k) degrees.push_back(spec.degree_at(k));
    const arbor::SphericalIndex idx(degrees);
    const auto hist = arbor::frobenius_histogram(spec, level, p_max, threads);
    const auto ref = arbor::wreath_type_distribution(idx, samples, seed, threads);
    const auto score = arbor::surjectivity_score(hist, ref);
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j{{"empirical", nlohmann::json::parse(hist.to_json())},
                         {"reference", nlohmann::json::parse(ref.to_json())},
                         {"tv_distance", score.tv_distance},
                         {"full_cycle_emp", score.full_cycle_emp},
                         {"full_cycle_ref", score.full_cycle_ref},
                         {"full_cycle_predicted", score.full_cycle_pred}};
        os << j.dump(2) << '\n';
    } else {
        os << "type,empirical_count,empirical_freq,reference_count,reference_freq\n";
        auto types = hist.counts;
        for (const auto& [t, c] : ref.counts) types.try_emplace(t, 0);
        for (const auto& [t, unused] : types) {
            const auto rc = ref.counts.count(t) ? ref.counts.at(t) : 0;
            const auto hc = hist.counts.count(t) ? hist.counts.at(t) : 0;
            os << t.to_string() << ',' << hc << ',' << fmt_double(hist.frequency(t)) << ',' << rc
               << ',' << fmt_double(ref.frequency(t)) << '\n';
        }
        os << "metric,value\n";
        os << "tv_distance," << fmt_double(score.tv_distance) << '\n';
        os << "full_cycle_emp," << fmt_double(score.full_cycle_emp) << '\n';
        os << "full_cycle_ref," << fmt_double(score.full_cycle_ref) << '\n';
        os << "full_cycle_predicted," << fmt_double(score.full_cycle_pred) << '\n';
    }
    out.emit(os.str());
}

void cmd_generic_sample(const std::string& index, std::uint64_t box, std::uint64_t samples,
                        std::uint64_t seed, bool heuristic, const arbor::HeuristicParams& params,
                        unsigned threads, const std::string& format, const Output& out) {
    const auto idx = parse_index(index);
    const arbor::BoxSampleReport report =
        heuristic
            ? arbor::sample_generic_density_heuristic(idx, box, samples, seed, params, threads)
            : arbor::sample_generic_density_exact(idx, box, samples, seed, threads);
    std::ostringstream os;
    if (format == "json") {
        os << report.to_json() << '\n';
    } else {
        report.write_csv(os);
    }
    out.emit(os.str());
}

void cmd_generic_curve(const std::string& box_list, unsigned threads, const std::string& format,
                       const Output& out) {
    std::vector<std::uint64_t> boxes;
    std::stringstream ss(box_list);
    std::string item;
    while (std::getline(ss, item, ',')) boxes.push_back(std::stoull(item));
    std::cerr << "curve: exhaustive boxes " << box_list << "\n";
    const auto curve = arbor::exceptional_growth_curve(boxes, threads);
    std::ostringstream os;
    if (format == "json") {
        os << curve.to_json() << '\n';
    } else {
        curve.write_csv(os);
    }
    out.emit(os.str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wreath-product cycle statistics and prime-density experiments for iterated "
                 "polynomial compositions"};
    app.require_subcommand(1);

    std::string index = "2,2";
    std::string spec_tag = "const:x^2-2";
    std::string format = "csv";
    std::string out_path;
    std::uint64_t limit = 100000;
    std::uint64_t samples = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t p_max = 100000;
    std::uint64_t box = 25;
    std::uint32_t n_max = 8;
    unsigned threads = 1;
    bool heuristic = false;
    arbor::HeuristicParams hparams;
    std::string box_list = "5,10,15,20,25";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
        cmd->add_option("--threads", threads, "worker threads (results are thread-count invariant)");
    };

    auto* wreath = app.add_subcommand("wreath", "tree automorphism group computations");
    auto* w_count = wreath->add_subcommand("count", "order, full-cycle count and exact ratio");
    w_count->add_option("--index", index, "spherical index, e.g. 2,3,2")->required();
    add_common(w_count);

    auto* w_enum = wreath->add_subcommand("enumerate", "list every element with its cycle type");
    w_enum->add_option("--index", index)->required();
    w_enum->add_option("--limit", limit, "refuse groups larger than this");
    add_common(w_enum);

    auto* w_ratio = wreath->add_subcommand("sample-ratio", "Monte Carlo full-cycle frequency");
    w_ratio->add_option("--index", index)->required();
    w_ratio->add_option("--samples", samples);
    w_ratio->add_option("--seed", seed, "RNG seed (default 12345)");
    add_common(w_ratio);

    auto* scan = app.add_subcommand("scan", "prime scans of polynomial sequences");
    auto* s_stable = scan->add_subcommand(
        "stable", "per-level irreducibility counts and densities over odd primes");
    s_stable
        ->add_option("--spec", spec_tag,
                     "sequence spec: const:<poly> | fmf:<q> | file:<path> | "
                     "random:<index>:<N>:<seed>")
        ->required();
    s_stable->add_option("--nmax", n_max, "deepest composition level");
    s_stable->add_option("--pmax", p_max, "prime bound");
    add_common(s_stable);

    auto* frob = app.add_subcommand("frob", "decomposition-type statistics");
    auto* f_hist = frob->add_subcommand("hist", "type histogram of f^(n) mod p over odd primes");
    f_hist->add_option("--spec", spec_tag)->required();
    f_hist->add_option("--nmax", n_max, "composition level");
    f_hist->add_option("--pmax", p_max);
    add_common(f_hist);

    auto* f_cmp = frob->add_subcommand(
        "compare", "histogram against the wreath Monte Carlo reference distribution");
    f_cmp->add_option("--spec", spec_tag)->required();
    f_cmp->add_option("--nmax", n_max, "composition level");
    f_cmp->add_option("--pmax", p_max);
    f_cmp->add_option("--samples", samples, "reference sample count");
    f_cmp->add_option("--seed", seed, "RNG seed (default 12345)");
    add_common(f_cmp);

    auto* generic = app.add_subcommand("generic", "box experiments on random sequences");
    auto* g_sample = generic->add_subcommand(
        "sample", "fraction of coefficient tuples with full Galois image at every level");
    g_sample->add_option("--index", index)->required();
    g_sample->add_option("--box", box, "coefficient box radius N");
    g_sample->add_option("--samples", samples, "0 = exhaustive (exact mode only)");
    g_sample->add_option("--seed", seed, "RNG seed (default 12345)");
    g_sample->add_flag("--heuristic,!--exact", heuristic,
                       "Frobenius-statistics heuristic instead of exact classification");
    g_sample->add_option("--heuristic-pmax", hparams.prime_bound);
    g_sample->add_option("--heuristic-ref-samples", hparams.ref_samples);
    g_sample->add_option("--heuristic-tv", hparams.tv_threshold);
    add_common(g_sample);

    auto* g_curve = generic->add_subcommand(
        "curve", "exhaustive exceptional counts for index (2,2) over nested boxes");
    g_curve->add_option("--box", box_list, "comma-separated box radii");
    add_common(g_curve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const Output out{out_path};
    try {
        if (w_count->parsed()) cmd_wreath_count(index, format, out);
        else if (w_enum->parsed()) cmd_wreath_enumerate(index, limit, format, out);
        else if (w_ratio->parsed()) cmd_wreath_sample_ratio(index, samples, seed, threads, format, out);
        else if (s_stable->parsed()) cmd_scan_stable(spec_tag, n_max, p_max, threads, format, out);
        else if (f_hist->parsed()) cmd_frob_hist(spec_tag, n_max, p_max, threads, format, out);
        else if (f_cmp->parsed())
            cmd_frob_compare(spec_tag, n_max, p_max, samples, seed, threads, format, out);
        else if (g_sample->parsed())
            cmd_generic_sample(index, box, samples, seed, heuristic, hparams, threads, format, out);
        else if (g_curve->parsed()) cmd_generic_curve(box_list, threads, format, out);
    } catch (const arbor::OrderExceedsLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const arbor::DegreeLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

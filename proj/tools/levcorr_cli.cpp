// levcorr: return-volatility cross-correlation analysis of trade data.
//
//   levcorr analyze --input trades.csv[.gz] --out-dir out/
//   levcorr synth --model garch --n 1000000 --output tape.csv
//   levcorr fit --profiles out/profiles.csv

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "gz_istream.hpp"
#include "levcorr/errors.hpp"
#include "levcorr/pipeline.hpp"
#include "levcorr/synth.hpp"

using namespace levcorr;

namespace {

double to_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw CLI::ValidationError("not a number: " + s);
    return v;
}

std::vector<std::string> split_colon(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(':', start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::pair<int, int> parse_lags(const std::string& s) {
    const auto parts = split_colon(s);
    if (parts.size() == 1) {
        const int k = static_cast<int>(to_double(parts[0]));
        return {-k, k};
    }
    if (parts.size() != 2) throw CLI::ValidationError("--lags expects lo:hi");
    return {static_cast<int>(to_double(parts[0])), static_cast<int>(to_double(parts[1]))};
}

FitRange parse_range(const std::string& s) {
    const auto parts = split_colon(s);
    if (parts.size() != 2) throw CLI::ValidationError("--fit-range expects lo:hi");
    return {to_double(parts[0]), to_double(parts[1])};
}

std::vector<double> parse_d_grid(const std::string& s) {
    const auto parts = split_colon(s);
    if (parts.size() == 1) return {to_double(parts[0])};
    if (parts.size() != 3) throw CLI::ValidationError("--d-grid expects lo:hi:step");
    return make_d_grid(to_double(parts[0]), to_double(parts[1]), to_double(parts[2]));
}

GapPolicy parse_gap_policy(const std::string& s) {
    if (s == "carry_forward") return GapPolicy::carry_forward;
    if (s == "drop_interval") return GapPolicy::drop_interval;
    throw CLI::ValidationError("--gap-policy must be carry_forward or drop_interval");
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::unique_ptr<std::istream> open_input(const std::string& path) {
    std::unique_ptr<std::istream> in;
    if (ends_with(path, ".gz"))
        in = std::make_unique<tools::GzIStream>(path);
    else
        in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) throw Error("cannot open " + path);
    return in;
}

struct AnalyzeArgs {
    std::string input;
    std::int64_t delta_t = 120;
    std::string d_grid = "0.1:3.0:0.1";
    std::string lags = "-200:200";
    std::string fit_range = "1:200";
    std::size_t jk_blocks = 100;
    std::optional<double> fit_filter;
    double plot_filter = 1.5;
    std::string gap_policy = "carry_forward";
    std::string out_dir = "levcorr_out";
    bool strict = false;
    bool no_dedup = false;
    unsigned threads = 0;
};

int run_analyze(const AnalyzeArgs& a) {
    AnalysisConfig cfg;
    cfg.delta_t = a.delta_t;
    cfg.d_grid = parse_d_grid(a.d_grid);
    std::tie(cfg.lag_min, cfg.lag_max) = parse_lags(a.lags);
    cfg.fit_range = parse_range(a.fit_range);
    cfg.jackknife.n_blocks = a.jk_blocks;
    cfg.fit_filter = a.fit_filter;
    cfg.plot_filter = a.plot_filter;
    cfg.gap_policy = parse_gap_policy(a.gap_policy);
    cfg.deduplicate = !a.no_dedup;
    cfg.threads = a.threads;

    auto in = open_input(a.input);
    ParseStats stats;
    const TickSeries ticks =
        parse_tick_csv(*in, a.strict ? Strictness::strict : Strictness::lenient, &stats, a.input);
    IngestSummary ingest{a.input, stats.lines, stats.accepted, stats.skipped, 0, stats.reordered};
    if (stats.skipped > 0) std::cerr << "skipped " << stats.skipped << " malformed line(s)\n";

    const AnalysisReport report = analyze_ticks(ticks, cfg, ingest);
    write_report(report, a.out_dir);
    std::cout << summary_text(report);
    std::cout << "\nwrote report to " << a.out_dir << "\n";
    return 0;
}

struct SynthArgs {
    std::string model = "garch";
    std::string layout = "grid";
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    double omega = 0.05, a_arch = 0.05, b_garch = 0.85, leverage = 0.10;
    std::int64_t delta_t = 120;
    std::int64_t mean_spacing = 12;
    std::int64_t start = 1420848000;
    double price = 300.0;
    double tick_vol = 1e-3;
    std::string output = "-";
};

int run_synth(const SynthArgs& a) {
    GarchSpec spec;
    spec.n = a.n;
    spec.seed = a.seed;
    if (a.model == "garch") {
        spec.omega = a.omega;
        spec.a_arch = a.a_arch;
        spec.b_garch = a.b_garch;
        spec.leverage = a.leverage;
    } else if (a.model != "iid") {
        throw CLI::ValidationError("--model must be iid or garch");
    }

    TickSeries ticks;
    if (a.layout == "tape") {
        if (a.model == "iid") {
            // An i.i.d. tape is the GARCH recursion with no memory.
            spec.omega = 1.0;
            spec.a_arch = spec.b_garch = spec.leverage = 0.0;
        }
        TickTapeSpec tape;
        tape.returns = spec;
        tape.start_time = a.start;
        tape.mean_spacing = a.mean_spacing;
        tape.start_price = a.price;
        tape.tick_vol = a.tick_vol;
        ticks = gen_tick_tape(tape);
    } else if (a.layout == "grid") {
        const ReturnSeries r = a.model == "iid" ? gen_iid_gaussian(a.n, a.seed) : gen_asym_garch(spec);
        double sd = 1.0;
        if (a.model == "garch") sd = std::sqrt(spec.unconditional_variance());
        ticks.records.reserve(r.size() + 1);
        double log_p = std::log(a.price);
        ticks.records.push_back({a.start, a.price, 1.0});
        for (std::size_t i = 0; i < r.size(); ++i) {
            log_p += a.tick_vol * r.values[i] / sd;
            ticks.records.push_back({a.start + static_cast<std::int64_t>(i + 1) * a.delta_t, std::exp(log_p), 1.0});
        }
    } else {
        throw CLI::ValidationError("--layout must be grid or tape");
    }

    if (a.output == "-") {
        write_tick_csv(std::cout, ticks);
    } else {
        std::ofstream out(a.output, std::ios::binary);
        if (!out) throw Error("cannot write " + a.output);
        write_tick_csv(out, ticks);
    }
    return 0;
}

struct FitArgs {
    std::string profiles;
    std::string fit_range = "1:200";
    std::optional<double> fit_filter;
};

int run_fit(const FitArgs& a) {
    auto in = open_input(a.profiles);
    const auto profiles = read_profile_csv(*in);
    const FitRange range = parse_range(a.fit_range);
    FitOptions opt;
    opt.filter_sigma = a.fit_filter;

    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : profiles) {
        const FitPoints pts = decay_points(p, range);
        nlohmann::json entry{{"d", p.d}};
        std::optional<FitResult> pow, expo;
        try {
            pow = fit_power_law(pts, range, opt);
            entry["power_law"] = fit_to_json(*pow, p.d);
            entry["long_range"] = long_range_flag(*pow);
        } catch (const Error& e) {
            entry["power_law_error"] = e.what();
        }
        try {
            expo = fit_exponential(pts, range, opt);
            entry["exponential"] = fit_to_json(*expo, p.d);
        } catch (const Error& e) {
            entry["exponential_error"] = e.what();
        }
        if (pow && expo) {
            const auto cmp = compare_models(*pow, *expo);
            entry["winner"] = cmp.winner ? std::string(model_name(*cmp.winner)) : "inconclusive";
        }
        out.push_back(std::move(entry));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Return-volatility cross-correlation analysis"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Full analysis of a trade CSV (unixtime,price,amount)");
    analyze->add_option("--input", an.input, "Trade CSV, optionally .gz")->required();
    analyze->add_option("--delta-t", an.delta_t, "Sampling interval in seconds (86400: UTC daily closes)")
        ->capture_default_str();
    analyze->add_option("--d-grid", an.d_grid, "Powers d as lo:hi:step")->capture_default_str();
    analyze->add_option("--lags", an.lags, "Lag window lo:hi (use --lags=-200:200) or K for -K:K")
        ->capture_default_str();
    analyze->add_option("--fit-range", an.fit_range, "Lag range for decay fits lo:hi")->capture_default_str();
    analyze->add_option("--jk-blocks", an.jk_blocks, "Jackknife blocks")->capture_default_str();
    analyze->add_option("--fit-filter", an.fit_filter, "Drop |cc| <= s*sigma points before fitting");
    analyze->add_option("--plot-filter", an.plot_filter, "Sigma filter for profiles_plot.csv")->capture_default_str();
    analyze->add_option("--gap-policy", an.gap_policy, "carry_forward or drop_interval")->capture_default_str();
    analyze->add_option("--out-dir", an.out_dir, "Output directory")->capture_default_str();
    analyze->add_flag("--strict", an.strict, "Fail on the first malformed line");
    analyze->add_flag("--no-dedup", an.no_dedup, "Keep exact duplicate trades");
    analyze->add_option("--threads", an.threads, "Worker threads (0 = all cores)")->capture_default_str();

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Emit a synthetic trade CSV");
    synth->add_option("--model", sy.model, "iid or garch")->capture_default_str();
    synth->add_option("--layout", sy.layout, "grid (one trade per delta_t) or tape (irregular trades)")
        ->capture_default_str();
    synth->add_option("--n", sy.n, "Number of returns (grid) or trades (tape)")->capture_default_str();
    synth->add_option("--seed", sy.seed)->capture_default_str();
    synth->add_option("--omega", sy.omega)->capture_default_str();
    synth->add_option("--a-arch", sy.a_arch)->capture_default_str();
    synth->add_option("--b-garch", sy.b_garch)->capture_default_str();
    synth->add_option("--leverage", sy.leverage)->capture_default_str();
    synth->add_option("--delta-t", sy.delta_t, "Grid spacing in seconds")->capture_default_str();
    synth->add_option("--mean-spacing", sy.mean_spacing, "Mean gap between trades (tape)")->capture_default_str();
    synth->add_option("--start", sy.start, "First timestamp")->capture_default_str();
    synth->add_option("--price", sy.price, "Starting price")->capture_default_str();
    synth->add_option("--tick-vol", sy.tick_vol, "Log-return scale per step")->capture_default_str();
    synth->add_option("--output", sy.output, "Output path or - for stdout")->capture_default_str();

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "Fit power-law and exponential decays to a profile CSV");
    fit->add_option("--profiles", fa.profiles, "CSV with columns d,lag,cc,sigma,pairs")->required();
    fit->add_option("--fit-range", fa.fit_range)->capture_default_str();
    fit->add_option("--fit-filter", fa.fit_filter);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return run_analyze(an);
        if (*synth) return run_synth(sy);
        if (*fit) return run_fit(fa);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

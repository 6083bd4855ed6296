#include "levcorr/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "levcorr/errors.hpp"
#include "levcorr/parallel.hpp"
#include "levcorr/returns.hpp"
#include "numfmt.hpp"

namespace levcorr {
namespace {

std::string gap_policy_name(GapPolicy p) {
    return p == GapPolicy::carry_forward ? "carry_forward" : "drop_interval";
}

DecayFits fit_decays(const CorrelationProfile& profile, const AnalysisConfig& config) {
    DecayFits out;
    out.d = profile.d;
    FitOptions options;
    options.filter_sigma = config.fit_filter;
    const FitPoints points = decay_points(profile, config.fit_range);
    try {
        out.power_law = fit_power_law(points, config.fit_range, options);
    } catch (const Error& e) {
        out.power_law_error = e.what();
    }
    try {
        out.exponential = fit_exponential(points, config.fit_range, options);
    } catch (const Error& e) {
        out.exponential_error = e.what();
    }
    if (out.power_law && out.exponential) out.comparison = compare_models(*out.power_law, *out.exponential);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << body;
}

}  // namespace

AnalysisReport analyze_returns(const ReturnSeries& returns, const AnalysisConfig& config) {
    AnalysisReport report;
    report.config = config;
    report.n_returns = returns.size();

    const NormalizedReturns r = standardize(returns);
    report.mean_raw = r.mean_raw;
    report.sigma_raw = r.sigma_raw;

    report.sweep = sweep_powers(r, config.d_grid, config.lag_min, config.lag_max, config.threads);
    attach_jackknife(report.sweep, r, config.jackknife, config.threads);

    report.fits.resize(report.sweep.profiles.size());
    parallel_for(report.fits.size(), config.threads,
                 [&](std::size_t i) { report.fits[i] = fit_decays(report.sweep.profiles[i], config); });

    FitPoints gamma_points;
    for (const auto& f : report.fits) {
        if (!f.power_law) continue;
        report.gamma_kappa.push_back(gamma_kappa_row(f.d, *f.power_law));
        gamma_points.push_back({f.d, f.power_law->params[1], f.power_law->param_errors[1]});
    }
    report.kappa_argmax_d = argmax_kappa(report.gamma_kappa);
    try {
        report.gamma_quadratic = fit_quadratic_gamma(gamma_points);
    } catch (const Error& e) {
        report.gamma_quadratic_error = e.what();
    }
    return report;
}

AnalysisReport analyze_ticks(const TickSeries& ticks, const AnalysisConfig& config, IngestSummary ingest) {
    TickSeries cleaned;
    const TickSeries* source = &ticks;
    if (config.deduplicate) {
        cleaned = deduplicate(ticks);
        ingest.duplicates_removed = ticks.size() - cleaned.size();
        source = &cleaned;
    }
    if (ingest.source_label.empty()) ingest.source_label = ticks.source_label;

    const PriceSeries prices = config.delta_t == seconds_per_day
                                   ? daily_close_series(*source, config.gap_policy)
                                   : resample(*source, config.delta_t, config.gap_policy);
    AnalysisReport report = analyze_returns(returns_for_policy(prices), config);
    report.ingest = ingest;
    report.first_tick = source->records.front().timestamp;
    report.last_tick = source->records.back().timestamp;
    report.grid_t0 = prices.t0;
    report.n_prices = prices.size();
    report.gap_fraction = prices.gap_fraction();
    return report;
}

nlohmann::json conventions(const AnalysisConfig& config) {
    nlohmann::json c;
    c["sampling"] = "previous-tick; grid points at multiples of delta_t from the unix epoch";
    c["daily_boundary"] = "UTC midnight; a day's close is the last trade at or before the next midnight";
    c["timestamp_ties"] = "trades sharing a second keep file order; the last one sets the price";
    c["deduplicate_exact_duplicates"] = config.deduplicate;
    c["gap_policy"] = gap_policy_name(config.gap_policy);
    c["normalization"] = "r = (R - mean) / sample standard deviation (N-1)";
    c["cc_moments"] = "global mean and population standard deviation of each full series";
    c["cc_pair_average"] = "sum over the N-|j| overlapping pairs divided by N-|j|";
    c["lag_convention"] = "j > 0 pairs r_t with |r_{t+j}|^d (future volatility); j < 0 with |r_{t-|j|}|^d";
    c["jackknife"] = {{"scheme", "delete_one_block"},
                      {"blocks", config.jackknife.n_blocks},
                      {"moments", "re-estimated on each reduced series"},
                      {"powered_series", "|r|^d of the full-sample normalized returns"}};
    c["fit_objective"] = "weighted chi2 with jackknife sigmas, Levenberg-Marquardt";
    c["fit_points"] = "y = -CC_d(j) for j in fit range; y <= 0 excluded";
    c["fit_filter_sigma"] = config.fit_filter ? nlohmann::json(*config.fit_filter) : nlohmann::json(nullptr);
    c["covariance"] = "inverse weighted normal matrix scaled by reduced chi2 (asymptotic standard errors)";
    c["kappa"] = "power-law amplitude: strength of the cross correlation at lag j = 1";
    c["long_range_criterion"] = "gamma < 1";
    return c;
}

nlohmann::json metadata_json(const AnalysisReport& report) {
    const auto& cfg = report.config;
    nlohmann::json m;
    m["version"] = version_string;
    m["conventions"] = conventions(cfg);
    m["config"] = {{"delta_t", cfg.delta_t},
                   {"d_grid", cfg.d_grid},
                   {"lags", {cfg.lag_min, cfg.lag_max}},
                   {"fit_range", {cfg.fit_range.lo, cfg.fit_range.hi}},
                   {"jk_blocks", cfg.jackknife.n_blocks},
                   {"plot_filter_sigma", cfg.plot_filter}};
    m["ingest"] = {{"source", report.ingest.source_label},
                   {"lines", report.ingest.lines},
                   {"accepted", report.ingest.accepted},
                   {"skipped", report.ingest.skipped},
                   {"duplicates_removed", report.ingest.duplicates_removed},
                   {"reordered", report.ingest.reordered}};
    m["data"] = {{"first_tick", report.first_tick},
                 {"last_tick", report.last_tick},
                 {"grid_t0", report.grid_t0},
                 {"n_prices", report.n_prices},
                 {"n_returns", report.n_returns},
                 {"carried_forward_fraction", report.gap_fraction},
                 {"raw_return_mean", report.mean_raw},
                 {"raw_return_sigma", report.sigma_raw}};
    m["extra"] = report.extra_metadata;
    return m;
}

std::string summary_text(const AnalysisReport& report) {
    std::ostringstream out;
    out << version_string << "\n";
    out << "returns: " << report.n_returns << "  delta_t: " << report.config.delta_t
        << " s  jackknife blocks: " << report.config.jackknife.n_blocks << "\n";
    out << "errors: asymptotic standard errors (covariance scaled by reduced chi2)\n";
    out << "kappa: strength of the cross correlation at lag j=1\n\n";

    out << "Power-law fits  -CC_d(j) = kappa * j^(-gamma),  j in [" << report.config.fit_range.lo << ", "
        << report.config.fit_range.hi << "]\n";
    out << "d      gamma               kappa               chi2red(pow)      chi2red(exp)      "
           "better        gamma<1  gamma+err\n";
    for (const auto& f : report.fits) {
        char dbuf[16];
        std::snprintf(dbuf, sizeof dbuf, "%-6.2f ", f.d);
        out << dbuf;
        if (!f.power_law) {
            out << "power-law fit failed: " << f.power_law_error << "\n";
            continue;
        }
        const auto& p = *f.power_law;
        char row[256];
        std::snprintf(row, sizeof row, "%-19s %-19s %-17s %-17s %-13s %-8s %s\n",
                      format_with_error(p.params[1], p.param_errors[1]).c_str(),
                      format_with_error(p.params[0], p.param_errors[0]).c_str(),
                      detail::sci(p.reduced_chi2).c_str(),
                      f.exponential ? detail::sci(f.exponential->reduced_chi2).c_str() : "n/a",
                      f.comparison ? (f.comparison->winner ? std::string(model_name(*f.comparison->winner)).c_str()
                                                           : "inconclusive")
                                   : "n/a",
                      long_range_flag(p) ? "yes" : "no", detail::sci(p.params[1] + p.param_errors[1]).c_str());
        out << row;
    }
    out << "\nQuadratic fit  gamma(d) = alpha d^2 + beta d + rho\n";
    if (report.gamma_quadratic) {
        const auto& q = *report.gamma_quadratic;
        out << "alpha " << format_with_error(q.params[0], q.param_errors[0]) << "  beta "
            << format_with_error(q.params[1], q.param_errors[1]) << "  rho "
            << format_with_error(q.params[2], q.param_errors[2]) << "\n";
        out << "raw: alpha " << detail::sci(q.params[0]) << " +- " << detail::sci(q.param_errors[0]) << "; beta "
            << detail::sci(q.params[1]) << " +- " << detail::sci(q.param_errors[1]) << "; rho "
            << detail::sci(q.params[2]) << " +- " << detail::sci(q.param_errors[2]) << "; chi2red "
            << detail::sci(q.reduced_chi2) << "\n";
    } else {
        out << "not available: " << report.gamma_quadratic_error << "\n";
    }
    if (report.kappa_argmax_d) out << "argmax_d kappa(d): " << *report.kappa_argmax_d << "\n";
    return out.str();
}

std::map<std::string, std::string> write_report(const AnalysisReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::map<std::string, std::string> files;

    {
        std::ostringstream s;
        write_profile_csv(s, report.sweep.profiles);
        files["profiles.csv"] = s.str();
    }
    {
        std::ostringstream s;
        write_profile_csv(s, report.sweep.profiles, report.config.plot_filter);
        files["profiles_plot.csv"] = s.str();
    }
    {
        std::ostringstream s;
        write_gamma_kappa_csv(s, report.gamma_kappa);
        if (report.kappa_argmax_d) s << "# argmax_d kappa(d) = " << detail::round_trip_sci(*report.kappa_argmax_d) << '\n';
        files["gamma_kappa.csv"] = s.str();
    }
    {
        nlohmann::json fits = nlohmann::json::array();
        for (const auto& f : report.fits) {
            nlohmann::json entry;
            entry["d"] = f.d;
            entry["power_law"] = f.power_law ? fit_to_json(*f.power_law, f.d) : nlohmann::json(nullptr);
            entry["exponential"] = f.exponential ? fit_to_json(*f.exponential, f.d) : nlohmann::json(nullptr);
            if (!f.power_law_error.empty()) entry["power_law_error"] = f.power_law_error;
            if (!f.exponential_error.empty()) entry["exponential_error"] = f.exponential_error;
            if (f.comparison) {
                entry["comparison"] = {
                    {"power_law_reduced_chi2", f.comparison->first_reduced_chi2},
                    {"exponential_reduced_chi2", f.comparison->second_reduced_chi2},
                    {"winner", f.comparison->winner ? std::string(model_name(*f.comparison->winner)) : "inconclusive"}};
            }
            if (f.power_law) entry["long_range"] = long_range_flag(*f.power_law);
            fits.push_back(std::move(entry));
        }
        nlohmann::json doc;
        doc["fits"] = std::move(fits);
        doc["gamma_quadratic"] =
            report.gamma_quadratic ? fit_to_json(*report.gamma_quadratic) : nlohmann::json(nullptr);
        doc["kappa_argmax_d"] = report.kappa_argmax_d ? nlohmann::json(*report.kappa_argmax_d) : nlohmann::json(nullptr);
        doc["provenance"] = conventions(report.config);
        files["fits.json"] = doc.dump(2) + "\n";
    }
    files["summary.txt"] = summary_text(report);
    files["metadata.json"] = metadata_json(report).dump(2) + "\n";

    std::map<std::string, std::string> hashes;
    std::string combined;
    for (const auto& [name, body] : files) {
        write_file(out_dir / name, body);
        hashes[name] = fnv1a_hex(body);
        combined += name + ":" + hashes[name] + "\n";
    }

    nlohmann::json run_info;
    const auto now = std::chrono::system_clock::now();
    run_info["generated_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    run_info["file_hashes"] = hashes;
    run_info["determinism_hash"] = fnv1a_hex(combined);
    write_file(out_dir / "run_info.json", run_info.dump(2) + "\n");
    return hashes;
}

}  // namespace levcorr

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levcorr/crosscorr.hpp"
#include "levcorr/fitting.hpp"
#include "levcorr/ingest.hpp"
#include "levcorr/jackknife.hpp"
#include "levcorr/report.hpp"
#include "levcorr/sampling.hpp"

namespace levcorr {

inline constexpr const char* version_string = "levcorr 0.1.0";

struct AnalysisConfig {
    std::int64_t delta_t = 120;  // 86400 selects UTC-midnight daily closes
    GapPolicy gap_policy = GapPolicy::carry_forward;
    bool deduplicate = true;
    std::vector<double> d_grid = make_d_grid(0.1, 3.0, 0.1);
    int lag_min = -200;
    int lag_max = 200;
    FitRange fit_range{1.0, 200.0};
    JackknifeConfig jackknife{};
    std::optional<double> fit_filter;  // applied to fitting when set
    double plot_filter = 1.5;          // for the filtered plot export only
    unsigned threads = 0;
};

struct IngestSummary {
    std::string source_label;
    std::size_t lines = 0;
    std::size_t accepted = 0;
    std::size_t skipped = 0;
    std::size_t duplicates_removed = 0;
    bool reordered = false;
};

/// Decay fits for one d. A failed fit leaves its slot empty and records why.
struct DecayFits {
    double d = 0.0;
    std::optional<FitResult> power_law;
    std::optional<FitResult> exponential;
    std::optional<ModelComparison> comparison;
    std::string power_law_error;
    std::string exponential_error;
};

struct AnalysisReport {
    AnalysisConfig config;
    IngestSummary ingest;
    std::int64_t first_tick = 0;
    std::int64_t last_tick = 0;
    std::int64_t grid_t0 = 0;
    std::size_t n_prices = 0;
    std::size_t n_returns = 0;
    double gap_fraction = 0.0;
    double mean_raw = 0.0;
    double sigma_raw = 0.0;
    nlohmann::json extra_metadata = nlohmann::json::object();  // e.g. synthetic seeds

    SweepResult sweep;
    std::vector<DecayFits> fits;
    std::vector<GammaKappaRow> gamma_kappa;
    std::optional<FitResult> gamma_quadratic;
    std::string gamma_quadratic_error;
    std::optional<double> kappa_argmax_d;
};

/// Sampling, returns, sweep, jackknife and fits from a parsed tape.
AnalysisReport analyze_ticks(const TickSeries& ticks, const AnalysisConfig& config,
                             IngestSummary ingest = {});

/// Same analysis starting from raw returns (used for synthetic series).
AnalysisReport analyze_returns(const ReturnSeries& returns, const AnalysisConfig& config);

/// Conventions used by the analysis, as written into metadata.json.
nlohmann::json conventions(const AnalysisConfig& config);

nlohmann::json metadata_json(const AnalysisReport& report);

/// Writes profiles.csv, profiles_plot.csv, fits.json, gamma_kappa.csv,
/// summary.txt and metadata.json, all deterministic, plus run_info.json
/// with the wall clock and a hash over the deterministic files.
/// Returns file name -> FNV-1a hash for the deterministic files.
std::map<std::string, std::string> write_report(const AnalysisReport& report,
                                                const std::filesystem::path& out_dir);

/// Human-readable summary table.
std::string summary_text(const AnalysisReport& report);

}  // namespace levcorr

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "levcorr/crosscorr.hpp"
#include "levcorr/fitting.hpp"

namespace levcorr {

inline constexpr const char* profile_csv_header = "d,lag,cc,sigma,pairs";
inline constexpr const char* gamma_kappa_csv_header = "d,gamma,gamma_err,kappa,kappa_err,chi2red";

/// Rows `d,lag,cc,sigma,pairs`. With filter_sigma = s, rows with |cc| <= s*sigma
/// are dropped (for plotting only). Throws MissingSigmas.
void write_profile_csv(std::ostream& out, const CorrelationProfile& profile,
                       std::optional<double> filter_sigma = std::nullopt);
void write_profile_csv(std::ostream& out, std::span<const CorrelationProfile> profiles,
                       std::optional<double> filter_sigma = std::nullopt);

/// Inverse of write_profile_csv; rows are grouped by d in file order.
std::vector<CorrelationProfile> read_profile_csv(std::istream& in);

/// One power-law fit summarized per d. kappa is the fitted strength at lag j = 1.
struct GammaKappaRow {
    double d = 0.0;
    double gamma = 0.0;
    double gamma_err = 0.0;
    double kappa = 0.0;
    double kappa_err = 0.0;
    double chi2red = 0.0;
};

GammaKappaRow gamma_kappa_row(double d, const FitResult& power_law_fit);

void write_gamma_kappa_csv(std::ostream& out, std::span<const GammaKappaRow> rows);

/// d of the largest kappa on the grid; nullopt for an empty table.
std::optional<double> argmax_kappa(std::span<const GammaKappaRow> rows);

/// "0.0184(13)": value rounded at the second significant digit of its error.
std::string format_with_error(double value, double error);

/// Fit as JSON: model, params, param_errors, covariance, reduced_chi2,
/// fit_range, excluded_points. `d` is attached when given.
nlohmann::json fit_to_json(const FitResult& fit, std::optional<double> d = std::nullopt);

/// FNV-1a 64-bit over bytes, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace levcorr

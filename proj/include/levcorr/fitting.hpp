#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "levcorr/crosscorr.hpp"

namespace levcorr {

/// One datum of a weighted fit: x is a lag j or a power d.
struct FitPoint {
    double x = 0.0;
    double y = 0.0;
    double sigma = 1.0;
};

using FitPoints = std::vector<FitPoint>;

/// power_law:   kappa * x^(-gamma)        params (kappa, gamma)
/// exponential: alpha * exp(-x / tau)     params (alpha, tau)
/// quadratic:   alpha d^2 + beta d + rho  params (alpha, beta, rho)
enum class Model { power_law, exponential, quadratic };

std::string_view model_name(Model m) noexcept;
std::size_t parameter_count(Model m) noexcept;
double model_value(Model m, std::span<const double> params, double x);

struct FitRange {
    double lo = 1.0;
    double hi = 200.0;

    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    friend bool operator==(const FitRange&, const FitRange&) = default;
};

struct FitOptions {
    // Drop points with |y| <= filter_sigma * sigma before fitting.
    std::optional<double> filter_sigma;
    int max_iterations = 200;
    double relative_tolerance = 1e-10;
};

struct FitResult {
    Model model = Model::power_law;
    std::vector<double> params;
    std::vector<double> param_errors;             // sqrt of the covariance diagonal
    std::vector<std::vector<double>> covariance;  // reduced-chi2 scaled inverse normal matrix
    double chi2 = 0.0;
    double reduced_chi2 = 0.0;
    FitRange fit_range;
    std::size_t n_points = 0;
    std::vector<double> excluded_x;  // in range but y <= 0
    std::vector<double> filtered_x;  // removed by filter_sigma
    int iterations = 0;
};

/// Weighted Levenberg-Marquardt fit of kappa * x^(-gamma). The start point
/// comes from an unweighted regression of ln y on ln x. Points with y <= 0
/// are excluded and listed. Throws InsufficientPoints, NonPositiveData,
/// NoConvergence.
FitResult fit_power_law(std::span<const FitPoint> points, FitRange range = {},
                        const FitOptions& options = {});

/// As fit_power_law for alpha * exp(-x / tau); start from ln y on x.
FitResult fit_exponential(std::span<const FitPoint> points, FitRange range = {},
                          const FitOptions& options = {});

/// Closed-form weighted linear least squares for gamma(d) = alpha d^2 + beta d + rho.
/// Needs at least three points; with exactly three the fit interpolates and
/// the covariance is left unscaled. Throws InsufficientPoints, SingularNormalMatrix.
FitResult fit_quadratic_gamma(std::span<const FitPoint> points);

/// The same quadratic model minimized by the iterative solver. Used to
/// cross-check the closed form.
FitResult fit_quadratic_iterative(std::span<const FitPoint> points, const FitOptions& options = {});

struct ModelComparison {
    Model first = Model::power_law;
    Model second = Model::exponential;
    double first_reduced_chi2 = 0.0;
    double second_reduced_chi2 = 0.0;
    std::optional<Model> winner;  // nullopt when the reduced chi2 values tie within 1e-12
};

/// Lower reduced chi2 wins. Throws RangeMismatch unless both fits used the same points.
ModelComparison compare_models(const FitResult& a, const FitResult& b);

/// gamma < 1 on a power-law fit. Throws WrongModel otherwise.
bool long_range_flag(const FitResult& fit);

/// (j, -CC_d(j), sigma_j) for j in range. Requires sigmas on the profile.
FitPoints decay_points(const CorrelationProfile& profile, FitRange range);

}  // namespace levcorr

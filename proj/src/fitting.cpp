#include "levcorr/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "levcorr/errors.hpp"

namespace levcorr {
namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// d f / d params at x.
Vec model_gradient(Model m, const Vec& p, double x) {
    Vec g(static_cast<Eigen::Index>(parameter_count(m)));
    switch (m) {
        case Model::power_law: {
            const double base = std::pow(x, -p[1]);
            g << base, -p[0] * base * std::log(x);
            break;
        }
        case Model::exponential: {
            const double e = std::exp(-x / p[1]);
            g << e, p[0] * e * x / (p[1] * p[1]);
            break;
        }
        case Model::quadratic:
            g << x * x, x, 1.0;
            break;
    }
    return g;
}

double chi2_at(Model m, const Vec& p, std::span<const FitPoint> pts) {
    double chi2 = 0.0;
    for (const auto& pt : pts) {
        const double r = (pt.y - model_value(m, std::span<const double>(p.data(), p.size()), pt.x)) / pt.sigma;
        chi2 += r * r;
    }
    return chi2;
}

// Weighted normal matrix J^T W J and gradient J^T W r.
void normal_equations(Model m, const Vec& p, std::span<const FitPoint> pts, Mat& a, Vec& g) {
    const auto k = p.size();
    a = Mat::Zero(k, k);
    g = Vec::Zero(k);
    for (const auto& pt : pts) {
        const Vec row = model_gradient(m, p, pt.x) / pt.sigma;
        const double r = (pt.y - model_value(m, std::span<const double>(p.data(), p.size()), pt.x)) / pt.sigma;
        a.noalias() += row * row.transpose();
        g.noalias() += row * r;
    }
}

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

void fill_statistics(FitResult& out, const Mat& normal, double chi2, bool scale_by_chi2) {
    const auto k = static_cast<std::size_t>(normal.rows());
    out.chi2 = chi2;
    const std::size_t dof = out.n_points > k ? out.n_points - k : 0;
    out.reduced_chi2 = dof > 0 ? chi2 / static_cast<double>(dof) : 0.0;

    Eigen::FullPivLU<Mat> lu(normal);
    if (!lu.isInvertible()) throw SingularNormalMatrix();
    Mat cov = lu.inverse();
    cov = 0.5 * (cov + cov.transpose());
    if (scale_by_chi2 && dof > 0) cov *= out.reduced_chi2;

    out.covariance.assign(k, std::vector<double>(k));
    out.param_errors.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            out.covariance[i][j] = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        out.param_errors[i] = std::sqrt(std::max(0.0, out.covariance[i][i]));
    }
}

// Damped Gauss-Newton with a multiplicative Marquardt schedule.
FitResult levenberg_marquardt(Model m, Vec p, std::span<const FitPoint> pts, const FitOptions& opt) {
    constexpr double lambda_max = 1e16;
    double lambda = 1e-3;
    double chi2 = chi2_at(m, p, pts);
    if (!std::isfinite(chi2)) throw NoConvergence("non-finite chi2 at the start point", to_std(p), chi2);

    Mat a;
    Vec g;
    bool converged = false;
    int iter = 0;
    while (!converged) {
        if (iter >= opt.max_iterations)
            throw NoConvergence("iteration limit reached", to_std(p), chi2);
        ++iter;
        normal_equations(m, p, pts, a, g);
        const double diag_floor = 1e-15 * std::max(a.diagonal().maxCoeff(), std::numeric_limits<double>::min());

        bool accepted = false;
        while (!accepted) {
            Mat damped = a;
            for (Eigen::Index i = 0; i < damped.rows(); ++i)
                damped(i, i) += lambda * std::max(a(i, i), diag_floor);
            Eigen::LDLT<Mat> ldlt(damped);
            Vec step;
            bool solved = ldlt.info() == Eigen::Success && ldlt.isPositive();
            if (solved) {
                step = ldlt.solve(g);
                solved = step.allFinite();
            }
            if (!solved) {
                lambda *= 10.0;
                if (lambda > lambda_max) throw NoConvergence("singular normal matrix", to_std(p), chi2);
                continue;
            }
            const Vec trial = p + step;
            const double trial_chi2 = chi2_at(m, trial, pts);
            if (std::isfinite(trial_chi2) && trial_chi2 <= chi2) {
                const double change = chi2 - trial_chi2;
                p = trial;
                chi2 = trial_chi2;
                lambda = std::max(lambda / 10.0, 1e-15);
                accepted = true;
                if (change <= opt.relative_tolerance * chi2 || chi2 == 0.0) converged = true;
            } else {
                lambda *= 10.0;
                // No representable descent step remains: p is a minimum to working precision.
                if (lambda > lambda_max) {
                    accepted = true;
                    converged = true;
                }
            }
        }
    }

    FitResult out;
    out.model = m;
    out.params = to_std(p);
    out.n_points = pts.size();
    out.iterations = iter;
    normal_equations(m, p, pts, a, g);
    fill_statistics(out, a, chi2, true);
    return out;
}

struct Selection {
    FitPoints used;
    std::vector<double> excluded;
    std::vector<double> filtered;
};

void check_sigma(const FitPoint& pt) {
    if (!(pt.sigma > 0.0) || !std::isfinite(pt.sigma) || !std::isfinite(pt.y) || !std::isfinite(pt.x))
        throw ConfigInvalid("fit points need finite values and sigma > 0");
}

Selection select_decay_points(std::span<const FitPoint> points, FitRange range, const FitOptions& opt,
                              bool need_positive_x) {
    Selection sel;
    for (const auto& pt : points) {
        if (!range.contains(pt.x)) continue;
        check_sigma(pt);
        if (need_positive_x && !(pt.x > 0.0)) throw ConfigInvalid("power-law fit needs x > 0");
        if (opt.filter_sigma && std::abs(pt.y) <= *opt.filter_sigma * pt.sigma) {
            sel.filtered.push_back(pt.x);
            continue;
        }
        if (!(pt.y > 0.0)) {
            sel.excluded.push_back(pt.x);
            continue;
        }
        sel.used.push_back(pt);
    }
    if (sel.used.size() < 3) {
        if (!sel.excluded.empty()) throw NonPositiveData(sel.excluded);
        throw InsufficientPoints(sel.used.size(), 3);
    }
    return sel;
}

// Unweighted least-squares line v = intercept + slope * u.
std::pair<double, double> line_fit(const std::vector<double>& u, const std::vector<double>& v) {
    const auto n = static_cast<double>(u.size());
    double mu = 0, mv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= n;
    mv /= n;
    double suu = 0, suv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu += (u[i] - mu) * (u[i] - mu);
        suv += (u[i] - mu) * (v[i] - mv);
    }
    const double slope = suu > 0 ? suv / suu : 0.0;
    return {mv - slope * mu, slope};
}

FitResult finish_decay_fit(FitResult out, FitRange range, Selection&& sel) {
    out.fit_range = range;
    out.excluded_x = std::move(sel.excluded);
    out.filtered_x = std::move(sel.filtered);
    return out;
}

}  // namespace

std::string_view model_name(Model m) noexcept {
    switch (m) {
        case Model::power_law: return "power_law";
        case Model::exponential: return "exponential";
        case Model::quadratic: return "quadratic";
    }
    return "unknown";
}

std::size_t parameter_count(Model m) noexcept { return m == Model::quadratic ? 3 : 2; }

double model_value(Model m, std::span<const double> p, double x) {
    switch (m) {
        case Model::power_law: return p[0] * std::pow(x, -p[1]);
        case Model::exponential: return p[0] * std::exp(-x / p[1]);
        case Model::quadratic: return (p[0] * x + p[1]) * x + p[2];
    }
    return 0.0;
}

FitResult fit_power_law(std::span<const FitPoint> points, FitRange range, const FitOptions& options) {
    Selection sel = select_decay_points(points, range, options, true);
    std::vector<double> u, v;
    for (const auto& pt : sel.used) {
        u.push_back(std::log(pt.x));
        v.push_back(std::log(pt.y));
    }
    const auto [intercept, slope] = line_fit(u, v);
    Vec start(2);
    start << std::exp(intercept), -slope;
    FitResult out = levenberg_marquardt(Model::power_law, start, sel.used, options);
    return finish_decay_fit(std::move(out), range, std::move(sel));
}

FitResult fit_exponential(std::span<const FitPoint> points, FitRange range, const FitOptions& options) {
    Selection sel = select_decay_points(points, range, options, false);
    std::vector<double> u, v;
    for (const auto& pt : sel.used) {
        u.push_back(pt.x);
        v.push_back(std::log(pt.y));
    }
    auto [intercept, slope] = line_fit(u, v);
    if (std::abs(slope) < 1e-12) {
        // Flat data: start from a decay time far beyond the fitted window.
        slope = -1e-6 / std::max(1.0, std::abs(range.hi - range.lo));
    }
    Vec start(2);
    start << std::exp(intercept), -1.0 / slope;
    FitResult out = levenberg_marquardt(Model::exponential, start, sel.used, options);
    return finish_decay_fit(std::move(out), range, std::move(sel));
}

FitResult fit_quadratic_gamma(std::span<const FitPoint> points) {
    if (points.size() < 3) throw InsufficientPoints(points.size(), 3);
    Mat a = Mat::Zero(3, 3);
    Vec b = Vec::Zero(3);
    FitRange range{points.front().x, points.front().x};
    for (const auto& pt : points) {
        check_sigma(pt);
        const double w = 1.0 / (pt.sigma * pt.sigma);
        Vec phi(3);
        phi << pt.x * pt.x, pt.x, 1.0;
        a.noalias() += w * phi * phi.transpose();
        b.noalias() += w * pt.y * phi;
        range.lo = std::min(range.lo, pt.x);
        range.hi = std::max(range.hi, pt.x);
    }
    Eigen::FullPivLU<Mat> lu(a);
    if (!lu.isInvertible()) throw SingularNormalMatrix();
    const Vec p = lu.solve(b);

    FitResult out;
    out.model = Model::quadratic;
    out.params = to_std(p);
    out.n_points = points.size();
    out.fit_range = range;
    fill_statistics(out, a, chi2_at(Model::quadratic, p, points), true);
    return out;
}

FitResult fit_quadratic_iterative(std::span<const FitPoint> points, const FitOptions& options) {
    if (points.size() < 3) throw InsufficientPoints(points.size(), 3);
    FitRange range{points.front().x, points.front().x};
    for (const auto& pt : points) {
        check_sigma(pt);
        range.lo = std::min(range.lo, pt.x);
        range.hi = std::max(range.hi, pt.x);
    }
    FitResult out = levenberg_marquardt(Model::quadratic, Vec::Zero(3), points, options);
    out.fit_range = range;
    return out;
}

ModelComparison compare_models(const FitResult& a, const FitResult& b) {
    if (!(a.fit_range == b.fit_range) || a.n_points != b.n_points || a.excluded_x != b.excluded_x ||
        a.filtered_x != b.filtered_x)
        throw RangeMismatch("fits were made over different points");
    ModelComparison cmp;
    cmp.first = a.model;
    cmp.second = b.model;
    cmp.first_reduced_chi2 = a.reduced_chi2;
    cmp.second_reduced_chi2 = b.reduced_chi2;
    const double diff = a.reduced_chi2 - b.reduced_chi2;
    if (std::abs(diff) > 1e-12) cmp.winner = diff < 0 ? a.model : b.model;
    return cmp;
}

bool long_range_flag(const FitResult& fit) {
    if (fit.model != Model::power_law) throw WrongModel("long-range flag needs a power-law fit");
    return fit.params.at(1) < 1.0;
}

FitPoints decay_points(const CorrelationProfile& profile, FitRange range) {
    if (!profile.sigmas) throw MissingSigmas();
    FitPoints out;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const double x = profile.lags[k];
        if (!range.contains(x)) continue;
        out.push_back({x, -profile.values[k], (*profile.sigmas)[k]});
    }
    return out;
}

}  // namespace levcorr

#include <doctest.h>

#include <cmath>

#include "levcorr/errors.hpp"
#include "levcorr/fitting.hpp"
#include "levcorr/synth.hpp"
#include "oracles.hpp"

using namespace levcorr;

namespace {

FitPoints power_points(double kappa, double gamma, double sigma, int lo = 1, int hi = 200) {
    FitPoints pts;
    for (int j = lo; j <= hi; ++j) pts.push_back({double(j), kappa * std::pow(j, -gamma), sigma});
    return pts;
}

FitPoints quadratic_points(double a, double b, double c, double sigma) {
    FitPoints pts;
    for (int k = 1; k <= 30; ++k) {
        const double d = 0.1 * k;
        pts.push_back({d, a * d * d + b * d + c, sigma});
    }
    return pts;
}

FitPoints noisy_power(std::uint64_t seed, double sigma_rel = 0.05) {
    ProfileTarget t;
    t.model = Model::power_law;
    t.params = {0.5, 0.7};
    t.sigma_rel = sigma_rel;
    t.seed = seed;
    return gen_profile_series(t);
}

}  // namespace

TEST_CASE("noise-free power law is recovered") {
    const FitResult f = fit_power_law(power_points(0.5, 0.7, 0.01));
    CHECK(f.model == Model::power_law);
    CHECK(std::abs(f.params[0] - 0.5) < 1e-8);
    CHECK(std::abs(f.params[1] - 0.7) < 1e-8);
    CHECK(f.reduced_chi2 < 1e-12);
    CHECK(f.n_points == 200);
    CHECK(f.excluded_x.empty());
}

TEST_CASE("flat data gives a zero exponent") {
    FitPoints pts;
    for (int j = 1; j <= 50; ++j) pts.push_back({double(j), 0.03, 0.001});
    const FitResult f = fit_power_law(pts, {1, 50});
    CHECK(std::abs(f.params[1]) < 1e-8);
    CHECK(std::abs(f.params[0] - 0.03) < 1e-8);
}

TEST_CASE("noise-free exponential is recovered with positive decay time") {
    FitPoints pts;
    for (int j = 1; j <= 200; ++j) pts.push_back({double(j), 0.3 * std::exp(-j / 15.0), 0.01});
    const FitResult f = fit_exponential(pts);
    CHECK(std::abs(f.params[0] - 0.3) < 1e-8);
    CHECK(std::abs(f.params[1] - 15.0) < 1e-8);
    CHECK(f.params[1] > 0);
}

TEST_CASE("range selection, non-positive exclusion and errors") {
    FitPoints pts = power_points(0.2, 0.6, 0.01, 1, 20);
    pts[4].y = -0.01;
    pts[7].y = 0.0;
    const FitResult f = fit_power_law(pts, {1, 10});
    CHECK(f.n_points == 8);
    CHECK(f.excluded_x == std::vector<double>{5.0, 8.0});
    CHECK(f.fit_range == FitRange{1, 10});

    CHECK_THROWS_AS(fit_power_law(power_points(0.2, 0.6, 0.01, 1, 2)), InsufficientPoints);
    FitPoints neg = power_points(0.2, 0.6, 0.01, 1, 4);
    neg[0].y = neg[1].y = -1.0;
    CHECK_THROWS_AS(fit_power_law(neg), NonPositiveData);
}

TEST_CASE("sigma filter removes points consistent with zero") {
    FitPoints pts = power_points(0.2, 0.6, 0.01, 1, 30);
    pts[29].sigma = 1.0;
    FitOptions opt;
    opt.filter_sigma = 1.5;
    const FitResult f = fit_power_law(pts, {1, 30}, opt);
    CHECK(f.filtered_x == std::vector<double>{30.0});
    CHECK(f.n_points == 29);
}

TEST_CASE("covariance invariants") {
    const FitResult f = fit_power_law(noisy_power(3));
    REQUIRE(f.covariance.size() == 2);
    CHECK(f.covariance[0][1] == f.covariance[1][0]);
    CHECK(f.covariance[0][0] > 0);
    CHECK(f.covariance[0][0] * f.covariance[1][1] - f.covariance[0][1] * f.covariance[1][0] >= 0);
    for (std::size_t i = 0; i < 2; ++i) CHECK(f.param_errors[i] == std::sqrt(f.covariance[i][i]));
    CHECK(f.reduced_chi2 >= 0);
    CHECK(f.reduced_chi2 == doctest::Approx(f.chi2 / (f.n_points - 2)));
}

TEST_CASE("model comparison") {
    FitResult a, b;
    a.model = Model::power_law;
    a.reduced_chi2 = 0.796;
    a.n_points = 200;
    b = a;
    b.model = Model::exponential;
    b.reduced_chi2 = 1.09;
    const ModelComparison c = compare_models(a, b);
    REQUIRE(c.winner.has_value());
    CHECK(*c.winner == Model::power_law);
    CHECK(c.first_reduced_chi2 == 0.796);

    CHECK_FALSE(compare_models(a, a).winner.has_value());

    FitResult shifted = b;
    shifted.fit_range = {2, 200};
    CHECK_THROWS_AS(compare_models(a, shifted), RangeMismatch);
    FitResult fewer = b;
    fewer.n_points = 199;
    CHECK_THROWS_AS(compare_models(a, fewer), RangeMismatch);

    const FitPoints exact = power_points(0.5, 0.7, 0.01);
    const ModelComparison real = compare_models(fit_power_law(exact), fit_exponential(exact));
    REQUIRE(real.winner.has_value());
    CHECK(*real.winner == Model::power_law);
    CHECK(real.first_reduced_chi2 < 1e-12);
    CHECK(real.second_reduced_chi2 > 0);
}

TEST_CASE("long-range flag") {
    FitResult f;
    f.model = Model::power_law;
    f.params = {0.1, 0.6};
    CHECK(long_range_flag(f));
    f.params[1] = 1.5;
    CHECK_FALSE(long_range_flag(f));
    f.params[1] = 0.563;
    CHECK(long_range_flag(f));
    f.model = Model::exponential;
    CHECK_THROWS_AS(long_range_flag(f), WrongModel);
}

TEST_CASE("rescaling all sigmas leaves estimates and scaled errors unchanged") {
    const FitPoints base = noisy_power(11);
    FitPoints scaled = base;
    for (auto& p : scaled) p.sigma *= 3.0;
    const FitResult a = fit_power_law(base);
    const FitResult b = fit_power_law(scaled);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(b.params[i] == doctest::Approx(a.params[i]).epsilon(1e-9));
        CHECK(b.param_errors[i] == doctest::Approx(a.param_errors[i]).epsilon(1e-7));
    }
    CHECK(b.reduced_chi2 == doctest::Approx(a.reduced_chi2 / 9.0).epsilon(1e-9));
}

TEST_CASE("residuals are orthogonal to the weighted Jacobian at the optimum") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const FitPoints pts = noisy_power(seed);
        const FitResult f = fit_power_law(pts);
        const double k = f.params[0], g = f.params[1];
        double gk = 0, gg = 0, nk = 0, ng = 0;
        for (const auto& p : pts) {
            const double w = 1.0 / (p.sigma * p.sigma);
            const double m = k * std::pow(p.x, -g);
            const double dk = m / k;
            const double dg = -m * std::log(p.x);
            gk += w * (p.y - m) * dk;
            gg += w * (p.y - m) * dg;
            nk += w * dk * dk;
            ng += w * dg * dg;
        }
        // Normalized gradient components.
        CHECK(std::abs(gk) / std::sqrt(nk * f.chi2) < 1e-6);
        CHECK(std::abs(gg) / std::sqrt(ng * f.chi2) < 1e-6);
    }
}

TEST_CASE("power law is equivariant under x rescaling") {
    const FitPoints pts = noisy_power(21);
    FitPoints stretched = pts;
    const double s = 2.5;
    for (auto& p : stretched) p.x *= s;
    const FitResult a = fit_power_law(pts);
    const FitResult b = fit_power_law(stretched, {s, 200 * s});
    CHECK(std::abs(b.params[1] - a.params[1]) < 1e-8);
    CHECK(std::abs(b.params[0] - a.params[0] * std::pow(s, a.params[1])) < 1e-8);
}

TEST_CASE("quadratic fit recovers generating coefficients") {
    const FitPoints pts = quadratic_points(0.0184, 0.0470, 0.5630, 0.01);
    const FitResult f = fit_quadratic_gamma(pts);
    CHECK(f.model == Model::quadratic);
    CHECK(std::abs(f.params[0] - 0.0184) < 1e-10);
    CHECK(std::abs(f.params[1] - 0.0470) < 1e-10);
    CHECK(std::abs(f.params[2] - 0.5630) < 1e-10);
}

TEST_CASE("weighted quadratic fit equals the normal-equations oracle") {
    Xoshiro256 rng(99);
    FitPoints pts;
    std::vector<double> x, y, s;
    for (int k = 1; k <= 30; ++k) {
        const double d = 0.1 * k;
        const double sigma = 0.005 + 0.01 * rng.uniform();
        const double val = 0.0184 * d * d + 0.0470 * d + 0.5630 + sigma * rng.normal();
        pts.push_back({d, val, sigma});
        x.push_back(d);
        y.push_back(val);
        s.push_back(sigma);
    }
    const FitResult f = fit_quadratic_gamma(pts);
    const auto ref = oracle::quadratic_normal_equations(x, y, s);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f.params[i] - ref[i]) < 1e-10);

    const FitResult it = fit_quadratic_iterative(pts);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f.params[i] - it.params[i]) < 1e-10);
    CHECK(f.param_errors[0] > 0);
}

TEST_CASE("three points determine the quadratic exactly") {
    const FitPoints pts{{0.5, 1.0, 1e-6}, {1.0, 3.0, 1e-6}, {2.0, 2.0, 1e-6}};
    const FitResult f = fit_quadratic_gamma(pts);
    for (const auto& p : pts) CHECK(model_value(Model::quadratic, f.params, p.x) == doctest::Approx(p.y).epsilon(1e-12));
    CHECK(f.reduced_chi2 == 0.0);

    CHECK_THROWS_AS(fit_quadratic_gamma(FitPoints{{0.5, 1.0, 1.0}, {1.0, 2.0, 1.0}}), InsufficientPoints);
    CHECK_THROWS_AS(fit_quadratic_gamma(FitPoints{{1.0, 1.0, 1.0}, {1.0, 2.0, 1.0}, {1.0, 3.0, 1.0}}),
                    SingularNormalMatrix);
}

TEST_CASE("decay points negate the profile and need sigmas") {
    CorrelationProfile p;
    p.d = 2.0;
    p.lags = {-1, 0, 1, 2, 3};
    p.values = {0.1, -0.2, -0.05, -0.03, 0.01};
    p.pair_counts = {10, 10, 10, 10, 10};
    CHECK_THROWS_AS(decay_points(p, {1, 3}), MissingSigmas);
    p.sigmas = std::vector<double>{0.01, 0.01, 0.02, 0.03, 0.04};
    const FitPoints pts = decay_points(p, {1, 3});
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].x == 1.0);
    CHECK(pts[0].y == 0.05);
    CHECK(pts[2].y == -0.01);
    CHECK(pts[1].sigma == 0.03);
}

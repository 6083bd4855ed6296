#include "levcorr/crosscorr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lagged.hpp"
#include "levcorr/errors.hpp"
#include "levcorr/parallel.hpp"

namespace levcorr {
namespace {

std::size_t checked_pairs(std::size_t n, int lag) {
    const auto a = static_cast<std::size_t>(lag < 0 ? -static_cast<long>(lag) : lag);
    if (a >= n || n - a < min_pairs_per_lag) throw LagOutOfRange(lag, n);
    return n - a;
}

// Centered series plus the normalization shared by every lag.
struct PreparedPair {
    std::vector<double> x;  // r - mean(r)
    std::vector<double> y;  // |r|^d - mean(|r|^d)
    double scale = 0.0;     // sigma_r * sigma_p
};

PreparedPair prepare(std::span<const double> r, std::span<const double> p) {
    if (r.size() != p.size()) throw ConfigInvalid("return and powered series differ in length");
    const SeriesMoments mr = global_moments(r);
    const SeriesMoments mp = global_moments(p);
    return {detail::centered(r, mr.mean), detail::centered(p, mp.mean), mr.sigma * mp.sigma};
}

double lag_value(const PreparedPair& pp, int lag) {
    const std::size_t n = pp.x.size();
    const std::size_t pairs = checked_pairs(n, lag);
    const double sum = detail::anchored_sum(pp.x, pp.y, lag, 0, pairs);
    return sum / static_cast<double>(pairs) / pp.scale;
}

void check_lag_window(int lag_min, int lag_max) {
    if (lag_min > 0 || lag_max < 0)
        throw ConfigInvalid("lag window must satisfy lag_min <= 0 <= lag_max");
}

CorrelationProfile profile_from(const PreparedPair& pp, double d, int lag_min, int lag_max,
                                unsigned threads) {
    const std::size_t n = pp.x.size();
    // Validate the whole window up front so errors are raised before any work.
    checked_pairs(n, lag_min);
    checked_pairs(n, lag_max);

    CorrelationProfile out;
    out.d = d;
    const auto count = static_cast<std::size_t>(lag_max - lag_min + 1);
    out.lags.resize(count);
    out.values.resize(count);
    out.pair_counts.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.lags[k] = lag_min + static_cast<int>(k);
        out.pair_counts[k] = checked_pairs(n, out.lags[k]);
    }
    parallel_for(count, threads, [&](std::size_t k) { out.values[k] = lag_value(pp, out.lags[k]); });
    return out;
}

}  // namespace

std::optional<std::size_t> CorrelationProfile::index_of(int lag) const noexcept {
    const auto it = std::find(lags.begin(), lags.end(), lag);
    if (it == lags.end()) return std::nullopt;
    return static_cast<std::size_t>(it - lags.begin());
}

SeriesMoments global_moments(std::span<const double> x) {
    if (x.empty()) throw DegenerateVariance("empty series");
    if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end())
        throw DegenerateVariance("series is constant");
    double sum = 0.0;
    for (double v : x) sum += v;
    const double mean = sum / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / static_cast<double>(x.size()));
    if (!(sigma > 0.0)) throw DegenerateVariance("series has zero variance");
    return {mean, sigma};
}

double cross_correlation(std::span<const double> r, std::span<const double> powered, int lag) {
    checked_pairs(r.size(), lag);
    return lag_value(prepare(r, powered), lag);
}

double cross_correlation(const NormalizedReturns& r, const PoweredSeries& pw, int lag) {
    return cross_correlation(r.view(), pw.view(), lag);
}

CorrelationProfile correlation_profile(const NormalizedReturns& r, double d, int lag_min, int lag_max,
                                       unsigned threads) {
    check_lag_window(lag_min, lag_max);
    const PoweredSeries pw = abs_power(r, d);
    return profile_from(prepare(r.view(), pw.view()), d, lag_min, lag_max, threads);
}

SweepResult sweep_powers(const NormalizedReturns& r, std::span<const double> d_grid, int lag_min,
                         int lag_max, unsigned threads) {
    if (d_grid.empty()) throw ConfigInvalid("d grid is empty");
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        if (!(d_grid[i] > 0.0)) throw ConfigInvalid("every d must be positive");
        if (i > 0 && !(d_grid[i] > d_grid[i - 1])) throw ConfigInvalid("d grid must be strictly increasing");
    }
    check_lag_window(lag_min, lag_max);
    checked_pairs(r.size(), lag_min);
    checked_pairs(r.size(), lag_max);

    SweepResult out;
    out.d_grid.assign(d_grid.begin(), d_grid.end());
    out.profiles.resize(d_grid.size());
    parallel_for(d_grid.size(), threads, [&](std::size_t i) {
        out.profiles[i] = correlation_profile(r, d_grid[i], lag_min, lag_max, 1);
    });
    return out;
}

std::vector<double> make_d_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(lo > 0.0) || hi < lo) throw ConfigInvalid("invalid d grid");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double v = lo + static_cast<double>(k) * step;
        grid[k] = std::round(v * 1e12) / 1e12;
    }
    return grid;
}

}  // namespace levcorr

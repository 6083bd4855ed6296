#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "levcorr/returns.hpp"

namespace levcorr {

/// Smallest number of overlapping pairs for which a lag is evaluated.
inline constexpr std::size_t min_pairs_per_lag = 10;

/// CC_d(j) over a lag grid for one power d.
///
/// Lag convention: j > 0 pairs r_t with |r_{t+j}|^d (volatility in the future
/// of the return); j < 0 pairs r_t with |r_{t-|j|}|^d.
struct CorrelationProfile {
    double d = 0.0;
    std::vector<int> lags;
    std::vector<double> values;
    std::optional<std::vector<double>> sigmas;  // filled by the jackknife
    std::vector<std::size_t> pair_counts;

    std::size_t size() const noexcept { return lags.size(); }
    /// Index of `lag` in the grid, or nullopt.
    std::optional<std::size_t> index_of(int lag) const noexcept;
};

struct SweepResult {
    std::vector<double> d_grid;
    std::vector<CorrelationProfile> profiles;
};

/// Mean and population (1/N) standard deviation; these are the global moments
/// shared by every lag, so CC at lag 0 is exactly the Pearson correlation.
struct SeriesMoments {
    double mean = 0.0;
    double sigma = 0.0;
};

/// Throws DegenerateVariance for constant input.
SeriesMoments global_moments(std::span<const double> x);

/// Single-lag cross-correlation between a return series and a powered series
/// of the same length. Throws LagOutOfRange when fewer than
/// min_pairs_per_lag pairs overlap, DegenerateVariance on zero variance.
double cross_correlation(std::span<const double> r, std::span<const double> powered, int lag);
double cross_correlation(const NormalizedReturns& r, const PoweredSeries& pw, int lag);

/// Every lag in [lag_min, lag_max]; requires lag_min <= 0 <= lag_max.
/// Values are bit-identical to cross_correlation at each lag.
CorrelationProfile correlation_profile(const NormalizedReturns& r, double d, int lag_min, int lag_max,
                                       unsigned threads = 1);

/// One profile per d. Output is independent of the thread count.
SweepResult sweep_powers(const NormalizedReturns& r, std::span<const double> d_grid, int lag_min,
                         int lag_max, unsigned threads = 0);

/// lo, lo+step, ..., hi (inclusive, tolerant to rounding); values are rounded
/// to 12 decimals so 0.1:3.0:0.1 yields the literal decimals.
std::vector<double> make_d_grid(double lo, double hi, double step);

}  // namespace levcorr

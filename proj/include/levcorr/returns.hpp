#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levcorr/sampling.hpp"

namespace levcorr {

/// Log returns R_i between consecutive grid points.
struct ReturnSeries {
    std::vector<double> values;
    std::int64_t delta_t = 0;
    // true where the return ends on a carried-forward grid point
    std::vector<bool> source_gap_mask;

    std::size_t size() const noexcept { return values.size(); }
};

/// r_i = (R_i - mean) / sample std. The raw moments are kept for reporting.
struct NormalizedReturns {
    std::vector<double> values;
    double mean_raw = 0.0;
    double sigma_raw = 1.0;

    std::size_t size() const noexcept { return values.size(); }
    std::span<const double> view() const noexcept { return values; }
};

/// |r_i|^d, with |0|^d == 0.
struct PoweredSeries {
    double d = 1.0;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    std::span<const double> view() const noexcept { return values; }
};

ReturnSeries log_returns(const PriceSeries& prices);

/// Drops gap-originated returns. Used for the drop_interval policy; the
/// carry_forward policy keeps every return.
ReturnSeries exclude_gap_returns(const ReturnSeries& returns);

/// Applies the gap policy recorded on the price grid.
ReturnSeries returns_for_policy(const PriceSeries& prices);

/// Throws DegenerateVariance if the sample standard deviation is zero.
NormalizedReturns standardize(const ReturnSeries& returns);
NormalizedReturns standardize(std::span<const double> raw);

/// Requires d > 0.
PoweredSeries abs_power(const NormalizedReturns& r, double d);
PoweredSeries abs_power(std::span<const double> r, double d);

}  // namespace levcorr

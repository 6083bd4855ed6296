#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "levcorr/ingest.hpp"

namespace levcorr {

enum class GapPolicy { carry_forward, drop_interval };

/// Fixed-interval price grid. Grid point i sits at t0 + i * delta_t and holds
/// the last traded price at or before that instant.
struct PriceSeries {
    std::int64_t delta_t = 0;
    std::int64_t t0 = 0;
    std::vector<double> prices;
    // true where no trade fell in (t - delta_t, t]; the price is carried forward
    std::vector<bool> gap_mask;
    GapPolicy gap_policy = GapPolicy::carry_forward;

    std::size_t size() const noexcept { return prices.size(); }
    std::int64_t time_at(std::size_t i) const noexcept {
        return t0 + static_cast<std::int64_t>(i) * delta_t;
    }
    double gap_fraction() const noexcept;
};

/// Previous-tick sampling onto a grid anchored at multiples of delta_t from
/// the unix epoch. The grid spans ceil(first/delta_t) .. ceil(last/delta_t).
/// Throws InsufficientData when fewer than two grid points result.
PriceSeries resample(const TickSeries& ticks, std::int64_t delta_t,
                     GapPolicy gap_policy = GapPolicy::carry_forward);

/// One close per UTC day: the last trade at or before the following midnight.
/// Grid points are labelled by that midnight (t0 is a multiple of 86400).
PriceSeries daily_close_series(const TickSeries& ticks,
                               GapPolicy gap_policy = GapPolicy::carry_forward);

inline constexpr std::int64_t seconds_per_day = 86400;

}  // namespace levcorr

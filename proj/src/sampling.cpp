#include "levcorr/sampling.hpp"

#include <algorithm>
#include <string>

#include "levcorr/errors.hpp"

namespace levcorr {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

void require_sorted(const TickSeries& ticks) {
    if (ticks.empty()) throw InsufficientData("tick series is empty");
    const bool sorted = std::is_sorted(
        ticks.records.begin(), ticks.records.end(),
        [](const TickRecord& a, const TickRecord& b) { return a.timestamp < b.timestamp; });
    if (!sorted) throw InsufficientData("tick series is not time-ordered");
}

}  // namespace

double PriceSeries::gap_fraction() const noexcept {
    if (gap_mask.empty()) return 0.0;
    const auto gaps = std::count(gap_mask.begin(), gap_mask.end(), true);
    return static_cast<double>(gaps) / static_cast<double>(gap_mask.size());
}

PriceSeries resample(const TickSeries& ticks, std::int64_t delta_t, GapPolicy gap_policy) {
    if (delta_t <= 0) throw InsufficientData("delta_t must be positive");
    require_sorted(ticks);

    const auto& recs = ticks.records;
    const std::int64_t first_slot = ceil_div(recs.front().timestamp, delta_t);
    const std::int64_t last_slot = ceil_div(recs.back().timestamp, delta_t);
    const std::int64_t n_points = last_slot - first_slot + 1;
    if (n_points < 2)
        throw InsufficientData("only " + std::to_string(n_points) + " grid point(s) at delta_t=" +
                               std::to_string(delta_t));

    PriceSeries out;
    out.delta_t = delta_t;
    out.t0 = first_slot * delta_t;
    out.gap_policy = gap_policy;
    out.prices.resize(static_cast<std::size_t>(n_points));
    out.gap_mask.resize(static_cast<std::size_t>(n_points));

    std::size_t k = 0;  // next tick not yet consumed
    double last_price = 0.0;
    for (std::size_t i = 0; i < out.prices.size(); ++i) {
        const std::int64_t t = out.time_at(i);
        bool traded = false;
        while (k < recs.size() && recs[k].timestamp <= t) {
            last_price = recs[k].price;
            traded = true;
            ++k;
        }
        out.prices[i] = last_price;
        out.gap_mask[i] = !traded;
    }
    return out;
}

PriceSeries daily_close_series(const TickSeries& ticks, GapPolicy gap_policy) {
    require_sorted(ticks);

    // A trade at t closes the day whose ending midnight is ceil(t / 86400) * 86400.
    const auto day_of = [](std::int64_t t) { return ceil_div(t, seconds_per_day); };
    const std::int64_t first_day = day_of(ticks.records.front().timestamp);
    const std::int64_t last_day = day_of(ticks.records.back().timestamp);
    if (last_day - first_day + 1 < 2) throw InsufficientData("ticks span fewer than two UTC days");

    const auto n_days = static_cast<std::size_t>(last_day - first_day + 1);
    std::vector<double> close(n_days, 0.0);
    std::vector<bool> has_trade(n_days, false);
    for (const auto& r : ticks.records) {
        const auto idx = static_cast<std::size_t>(day_of(r.timestamp) - first_day);
        close[idx] = r.price;  // sorted input: the last write is the day's close
        has_trade[idx] = true;
    }

    PriceSeries out;
    out.delta_t = seconds_per_day;
    out.t0 = first_day * seconds_per_day;
    out.gap_policy = gap_policy;
    out.prices.resize(n_days);
    out.gap_mask.resize(n_days);
    for (std::size_t i = 0; i < n_days; ++i) {
        out.gap_mask[i] = !has_trade[i];
        out.prices[i] = has_trade[i] ? close[i] : out.prices[i - 1];
    }
    return out;
}

}  // namespace levcorr

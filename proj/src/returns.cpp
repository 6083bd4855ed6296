#include "levcorr/returns.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "levcorr/errors.hpp"

namespace levcorr {

ReturnSeries log_returns(const PriceSeries& prices) {
    if (prices.size() < 2) throw InsufficientData("need at least two prices for a return");
    ReturnSeries out;
    out.delta_t = prices.delta_t;
    out.values.resize(prices.size() - 1);
    out.source_gap_mask.resize(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        if (!(prices.prices[i] > 0.0) || !(prices.prices[i + 1] > 0.0))
            throw InsufficientData("non-positive price on grid");
        out.values[i] = std::log(prices.prices[i + 1]) - std::log(prices.prices[i]);
        out.source_gap_mask[i] =
            prices.gap_mask.size() == prices.size() ? bool(prices.gap_mask[i + 1]) : false;
    }
    return out;
}

ReturnSeries exclude_gap_returns(const ReturnSeries& returns) {
    ReturnSeries out;
    out.delta_t = returns.delta_t;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        if (i < returns.source_gap_mask.size() && returns.source_gap_mask[i]) continue;
        out.values.push_back(returns.values[i]);
        out.source_gap_mask.push_back(false);
    }
    return out;
}

ReturnSeries returns_for_policy(const PriceSeries& prices) {
    ReturnSeries all = log_returns(prices);
    if (prices.gap_policy == GapPolicy::drop_interval) return exclude_gap_returns(all);
    return all;
}

NormalizedReturns standardize(std::span<const double> raw) {
    const std::size_t n = raw.size();
    if (n < 2) throw InsufficientData("need at least two returns to standardize");

    if (std::adjacent_find(raw.begin(), raw.end(), std::not_equal_to<>()) == raw.end())
        throw DegenerateVariance("return series is constant");

    double sum = 0.0;
    for (double v : raw) sum += v;
    const double mean = sum / static_cast<double>(n);

    double ss = 0.0;
    for (double v : raw) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sigma > 0.0)) throw DegenerateVariance("return series has zero variance");

    NormalizedReturns out;
    out.mean_raw = mean;
    out.sigma_raw = sigma;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = (raw[i] - mean) / sigma;
    return out;
}

NormalizedReturns standardize(const ReturnSeries& returns) { return standardize(std::span(returns.values)); }

PoweredSeries abs_power(std::span<const double> r, double d) {
    if (!(d > 0.0)) throw ConfigInvalid("power d must be positive");
    PoweredSeries out;
    out.d = d;
    out.values.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double a = std::abs(r[i]);
        out.values[i] = a == 0.0 ? 0.0 : std::pow(a, d);
    }
    return out;
}

PoweredSeries abs_power(const NormalizedReturns& r, double d) { return abs_power(r.view(), d); }

}  // namespace levcorr

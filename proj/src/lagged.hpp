#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace levcorr::detail {

// Fixed-order dot product. Eight independent accumulators let the compiler
// keep several FMAs in flight while the summation order stays a pure
// function of n, so results never depend on threading.
inline double dot(const double* a, const double* b, std::size_t n) noexcept {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        for (std::size_t k = 0; k < 8; ++k) acc[k] += a[i + k] * b[i + k];
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

// Sum of x[m + a] * y[m]-style products for pairs anchored at m in [lo, hi).
// For lag >= 0 the anchor is the return index; for lag < 0 it is the powered
// index. `a` is |lag|.
inline double anchored_sum(std::span<const double> x, std::span<const double> y, int lag,
                           std::size_t lo, std::size_t hi) noexcept {
    if (hi <= lo) return 0.0;
    const auto a = static_cast<std::size_t>(lag < 0 ? -lag : lag);
    if (lag >= 0) return dot(x.data() + lo, y.data() + lo + a, hi - lo);
    return dot(x.data() + lo + a, y.data() + lo, hi - lo);
}

inline std::vector<double> centered(std::span<const double> v, double mean) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - mean;
    return out;
}

}  // namespace levcorr::detail

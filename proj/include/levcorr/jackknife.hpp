#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "levcorr/crosscorr.hpp"
#include "levcorr/returns.hpp"

namespace levcorr {

/// Smallest block length the jackknife accepts.
inline constexpr std::size_t min_block_length = 20;

struct JackknifeConfig {
    enum class Scheme { delete_one_block };

    std::size_t n_blocks = 100;
    Scheme scheme = Scheme::delete_one_block;
};

/// Throws ConfigInvalid unless 2 <= n_blocks <= n / min_block_length.
void validate(const JackknifeConfig& cfg, std::size_t n);

/// Block b covers [block_begin(b), block_begin(b+1)) with block_begin(b) = floor(b*n/B).
std::size_t block_begin(std::size_t block, std::size_t n, std::size_t n_blocks) noexcept;

/// Leave-one-block-out estimates theta_(b)(j), indexed [lag][block].
///
/// Deleting block b joins its neighbours; the global moments are re-estimated
/// on the reduced series. The powered series is |r|^d of the full-sample
/// normalized returns with the same block removed.
std::vector<std::vector<double>> jackknife_replicates(const NormalizedReturns& r, double d,
                                                      std::span<const int> lags,
                                                      const JackknifeConfig& cfg,
                                                      unsigned threads = 1);

/// sigma^2(j) = (B-1)/B * sum_b (theta_(b) - mean_b theta)^2
double jackknife_spread(std::span<const double> replicates);

/// One-sigma jackknife errors aligned to `lags`.
std::vector<double> jackknife_sigma(const NormalizedReturns& r, double d, std::span<const int> lags,
                                    const JackknifeConfig& cfg, unsigned threads = 1);

/// Fills profile.sigmas in place.
void attach_jackknife(CorrelationProfile& profile, const NormalizedReturns& r,
                      const JackknifeConfig& cfg, unsigned threads = 1);

/// Fills sigmas for every profile; independent of the thread count.
void attach_jackknife(SweepResult& sweep, const NormalizedReturns& r, const JackknifeConfig& cfg,
                      unsigned threads = 0);

}  // namespace levcorr

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "levcorr/fitting.hpp"
#include "levcorr/ingest.hpp"
#include "levcorr/returns.hpp"

namespace levcorr {

/**
 * xoshiro256** (Blackman & Vigna) seeded through splitmix64.
 *
 * The state is four outputs of splitmix64 started at `seed`. Uniforms use the
 * top 53 bits; normals come from the Box-Muller transform
 *   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2)
 * with u1 in (0, 1] and u2 in [0, 1), emitted in the order z0, z1.
 * Any implementation following this description reproduces the streams.
 */
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;
    /// [0, 1)
    double uniform() noexcept;
    /// (0, 1]
    double uniform_open_zero() noexcept;
    /// Standard normal via Box-Muller.
    double normal() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// n >= 100 standard normal draws.
ReturnSeries gen_iid_gaussian(std::size_t n, std::uint64_t seed);

/// Asymmetric (GJR-type) GARCH(1,1):
///   sigma2_t = omega + (a_arch + leverage * [eps_{t-1} < 0]) eps_{t-1}^2 + b_garch sigma2_{t-1}
///   eps_t = sigma_t z_t
struct GarchSpec {
    double omega = 0.05;
    double a_arch = 0.05;
    double b_garch = 0.85;
    double leverage = 0.10;
    std::size_t n = 1'000'000;
    std::uint64_t seed = 1;
    // Mirror-image path: every shock is negated and the asymmetry acts on
    // positive shocks instead, so the output is exactly -eps.
    bool negate_shocks = false;

    double persistence() const noexcept { return a_arch + b_garch + leverage / 2.0; }
    double unconditional_variance() const noexcept { return omega / (1.0 - persistence()); }
    /// Discarded start-up steps: 10 / (1 - persistence), rounded up.
    std::size_t burn_in() const noexcept;
};

/// Throws NonStationarySpec unless omega > 0, a, b >= 0, a + leverage >= 0 and
/// persistence < 1.
void validate(const GarchSpec& spec);

/// sigma2_0 is the unconditional variance; burn_in() steps are dropped.
ReturnSeries gen_asym_garch(const GarchSpec& spec);

/// Target shape for synthetic fit inputs y_i = model(x_i) + N(0, sigma_i),
/// sigma_i = sigma_abs + sigma_rel * |model(x_i)|, x = x_lo, x_lo+1, ..., x_hi.
struct ProfileTarget {
    Model model = Model::power_law;
    std::vector<double> params;  // as in fitting (kappa, gamma) or (alpha, tau)
    int x_lo = 1;
    int x_hi = 200;
    double sigma_abs = 0.0;
    double sigma_rel = 0.05;
    // Scale on the injected noise; 0 gives noise-free points with the stated sigmas.
    double noise_scale = 1.0;
    std::uint64_t seed = 1;
};

FitPoints gen_profile_series(const ProfileTarget& target);

/// Synthetic trade tape for end-to-end runs: per-tick log returns
/// (scaled by tick_vol) from a GARCH spec, tick gaps uniform on
/// [1, 2*mean_spacing-1] seconds, unit volumes.
struct TickTapeSpec {
    GarchSpec returns{};  // returns.n is the number of ticks
    std::int64_t start_time = 1420848000;  // 2015-01-10 00:00:00 UTC
    std::int64_t mean_spacing = 12;
    double start_price = 300.0;
    double tick_vol = 1e-3;
};

TickSeries gen_tick_tape(const TickTapeSpec& spec);

}  // namespace levcorr

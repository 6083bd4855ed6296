#include "levcorr/synth.hpp"

#include <cmath>
#include <numbers>

#include "levcorr/errors.hpp"

namespace levcorr {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

constexpr double two_pow_minus_53 = 1.0 / 9007199254740992.0;

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Xoshiro256::next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() noexcept { return static_cast<double>(next() >> 11) * two_pow_minus_53; }

double Xoshiro256::uniform_open_zero() noexcept {
    return static_cast<double>((next() >> 11) + 1) * two_pow_minus_53;
}

double Xoshiro256::normal() noexcept {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform_open_zero();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

ReturnSeries gen_iid_gaussian(std::size_t n, std::uint64_t seed) {
    if (n < 100) throw ConfigInvalid("gen_iid_gaussian needs n >= 100");
    Xoshiro256 rng(seed);
    ReturnSeries out;
    out.values.resize(n);
    out.source_gap_mask.assign(n, false);
    for (auto& v : out.values) v = rng.normal();
    return out;
}

std::size_t GarchSpec::burn_in() const noexcept {
    return static_cast<std::size_t>(std::ceil(10.0 / (1.0 - persistence())));
}

void validate(const GarchSpec& spec) {
    if (!(spec.omega > 0.0)) throw NonStationarySpec("omega must be positive");
    if (spec.a_arch < 0.0 || spec.b_garch < 0.0)
        throw NonStationarySpec("ARCH and GARCH coefficients must be non-negative");
    if (spec.a_arch + spec.leverage < 0.0)
        throw NonStationarySpec("a_arch + leverage must be non-negative");
    if (!(spec.persistence() < 1.0))
        throw NonStationarySpec("a_arch + b_garch + leverage/2 must be below 1");
    if (spec.n == 0) throw NonStationarySpec("n must be positive");
}

ReturnSeries gen_asym_garch(const GarchSpec& spec) {
    validate(spec);
    Xoshiro256 rng(spec.seed);
    const std::size_t burn = spec.burn_in();

    ReturnSeries out;
    out.values.resize(spec.n);
    out.source_gap_mask.assign(spec.n, false);

    double sigma2 = spec.unconditional_variance();
    double prev_eps = 0.0;
    bool have_prev = false;
    for (std::size_t t = 0; t < burn + spec.n; ++t) {
        if (have_prev) {
            const double arch = spec.a_arch + (prev_eps < 0.0 ? spec.leverage : 0.0);
            sigma2 = spec.omega + arch * prev_eps * prev_eps + spec.b_garch * sigma2;
        }
        const double eps = std::sqrt(sigma2) * rng.normal();
        if (t >= burn) out.values[t - burn] = spec.negate_shocks ? -eps : eps;
        prev_eps = eps;
        have_prev = true;
    }
    return out;
}

FitPoints gen_profile_series(const ProfileTarget& target) {
    if (target.params.size() != 2 || target.model == Model::quadratic)
        throw ConfigInvalid("profile target needs a two-parameter decay model");
    if (!(target.params[0] > 0.0) || !(target.params[1] > 0.0))
        throw ConfigInvalid("profile target parameters must be positive");
    if (target.x_hi < target.x_lo) throw ConfigInvalid("empty x range");
    if (target.sigma_abs < 0.0 || target.sigma_rel < 0.0 || !(target.sigma_abs + target.sigma_rel > 0.0))
        throw ConfigInvalid("noise sigmas must be non-negative and not both zero");

    Xoshiro256 rng(target.seed);
    FitPoints out;
    for (int x = target.x_lo; x <= target.x_hi; ++x) {
        const double xd = x;
        const double truth = model_value(target.model, target.params, xd);
        const double sigma = target.sigma_abs + target.sigma_rel * std::abs(truth);
        const double noise = rng.normal() * sigma * target.noise_scale;
        out.push_back({xd, truth + noise, sigma});
    }
    return out;
}

TickSeries gen_tick_tape(const TickTapeSpec& spec) {
    if (spec.mean_spacing < 1) throw ConfigInvalid("mean tick spacing must be at least one second");
    if (!(spec.start_price > 0.0) || !(spec.tick_vol > 0.0))
        throw ConfigInvalid("start price and tick volatility must be positive");
    const ReturnSeries shocks = gen_asym_garch(spec.returns);
    const double unit = spec.tick_vol / std::sqrt(spec.returns.unconditional_variance());

    // Spacing draws use their own stream so the return path depends only on returns.seed.
    std::uint64_t spacing_seed = spec.returns.seed ^ 0x5bd1e9955bd1e995ULL;
    Xoshiro256 rng(splitmix64(spacing_seed));
    const auto span = static_cast<std::uint64_t>(2 * spec.mean_spacing - 1);

    TickSeries out;
    out.source_label = "synthetic";
    out.records.resize(shocks.size());
    std::int64_t t = spec.start_time;
    double log_price = std::log(spec.start_price);
    for (std::size_t i = 0; i < shocks.size(); ++i) {
        t += 1 + static_cast<std::int64_t>(rng.next() % span);
        log_price += unit * shocks.values[i];
        out.records[i] = {t, std::exp(log_price), 1.0};
    }
    return out;
}

}  // namespace levcorr

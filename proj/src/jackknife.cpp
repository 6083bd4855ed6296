#include "levcorr/jackknife.hpp"

#include <cmath>
#include <string>

#include "lagged.hpp"
#include "levcorr/errors.hpp"
#include "levcorr/parallel.hpp"

namespace levcorr {
namespace {

// Block sums of the series centered on the full-sample means. Every
// leave-one-block-out moment follows from these by subtraction.
struct BlockTotals {
    std::vector<double> x, y, xx, yy;
    double sx = 0, sy = 0, sxx = 0, syy = 0;
};

struct Prepared {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::size_t> bounds;  // n_blocks + 1 entries
    BlockTotals totals;
    double full_var_x = 0.0;
    double full_var_y = 0.0;
};

Prepared prepare(const NormalizedReturns& r, double d, const JackknifeConfig& cfg) {
    const std::size_t n = r.size();
    validate(cfg, n);
    const PoweredSeries pw = abs_power(r, d);
    const SeriesMoments mr = global_moments(r.view());
    const SeriesMoments mp = global_moments(pw.view());

    Prepared p;
    p.x = detail::centered(r.view(), mr.mean);
    p.y = detail::centered(pw.view(), mp.mean);
    p.full_var_x = mr.sigma * mr.sigma;
    p.full_var_y = mp.sigma * mp.sigma;

    const std::size_t blocks = cfg.n_blocks;
    p.bounds.resize(blocks + 1);
    for (std::size_t b = 0; b <= blocks; ++b) p.bounds[b] = block_begin(b, n, blocks);

    auto& t = p.totals;
    t.x.assign(blocks, 0.0);
    t.y.assign(blocks, 0.0);
    t.xx.assign(blocks, 0.0);
    t.yy.assign(blocks, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t i = p.bounds[b]; i < p.bounds[b + 1]; ++i) {
            t.x[b] += p.x[i];
            t.y[b] += p.y[i];
            t.xx[b] += p.x[i] * p.x[i];
            t.yy[b] += p.y[i] * p.y[i];
        }
        t.sx += t.x[b];
        t.sy += t.y[b];
        t.sxx += t.xx[b];
        t.syy += t.yy[b];
    }
    return p;
}

// theta_(b)(lag) for every block b.
std::vector<double> replicates_for_lag(const Prepared& p, int lag) {
    const std::size_t n = p.x.size();
    const std::size_t blocks = p.bounds.size() - 1;
    const auto a = static_cast<std::size_t>(lag < 0 ? -lag : lag);
    const bool forward = lag >= 0;
    const std::span<const double> x(p.x), y(p.y);

    // Pair (anchor m, far end f): forward lags pair r_m with p_f, backward lags pair r_f with p_m.
    const auto pair = [&](std::size_t m, std::size_t f) { return forward ? x[m] * y[f] : x[f] * y[m]; };

    // Lagged sums split by the block holding the pair's anchor.
    std::vector<double> anchored(blocks, 0.0);
    double anchored_total = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = p.bounds[b];
        const std::size_t hi = std::min(p.bounds[b + 1], a < n ? n - a : 0);
        anchored[b] = detail::anchored_sum(x, y, lag, lo, hi);
        anchored_total += anchored[b];
    }

    const auto& t = p.totals;
    std::vector<double> theta(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t s = p.bounds[b];
        const std::size_t e = p.bounds[b + 1];
        const std::size_t len = e - s;
        const std::size_t nr = n - len;  // reduced length
        if (a >= nr || nr - a < min_pairs_per_lag) throw LagOutOfRange(lag, nr);
        const std::size_t pairs = nr - a;

        // Pairs anchored just before the deleted block: drop the originals that
        // reached into or across it, add the pairs formed across the join.
        double sxy = anchored_total - anchored[b];
        for (std::size_t m = s > a ? s - a : 0; m < s; ++m) {
            if (m + a < n) sxy -= pair(m, m + a);
            if (m + a + len < n) sxy += pair(m, m + a + len);
        }

        const auto orig = [&](std::size_t k) { return k < s ? k : k + len; };
        const double sx = t.sx - t.x[b];
        const double sy = t.sy - t.y[b];
        double head_x = 0, head_y = 0, tail_x = 0, tail_y = 0;
        for (std::size_t k = 0; k < a; ++k) {
            head_x += x[orig(k)];
            head_y += y[orig(k)];
            tail_x += x[orig(nr - a + k)];
            tail_y += y[orig(nr - a + k)];
        }
        // Forward lags use returns 0..nr-a-1 and powers a..nr-1; backward lags the reverse.
        const double r_side = forward ? sx - tail_x : sx - head_x;
        const double p_side = forward ? sy - head_y : sy - tail_y;

        const double nrd = static_cast<double>(nr);
        const double mx = sx / nrd;
        const double my = sy / nrd;
        const double cov = (sxy - my * r_side - mx * p_side + static_cast<double>(pairs) * mx * my) /
                           static_cast<double>(pairs);
        const double var_x = (t.sxx - t.xx[b]) / nrd - mx * mx;
        const double var_y = (t.syy - t.yy[b]) / nrd - my * my;
        // Subtraction leaves rounding-level residue when the reduced series is constant.
        constexpr double degenerate_ratio = 1e-20;
        if (!(var_x > degenerate_ratio * p.full_var_x) || !(var_y > degenerate_ratio * p.full_var_y))
            throw DegenerateVariance("zero variance after deleting block " + std::to_string(b));
        theta[b] = cov / std::sqrt(var_x * var_y);
    }
    return theta;
}

}  // namespace

void validate(const JackknifeConfig& cfg, std::size_t n) {
    if (cfg.n_blocks < 2)
        throw ConfigInvalid("jackknife needs at least 2 blocks");
    if (cfg.n_blocks > n / min_block_length)
        throw ConfigInvalid("jackknife with " + std::to_string(cfg.n_blocks) + " blocks leaves fewer than " +
                            std::to_string(min_block_length) + " points per block at N=" + std::to_string(n));
}

std::size_t block_begin(std::size_t block, std::size_t n, std::size_t n_blocks) noexcept {
    return block * n / n_blocks;
}

std::vector<std::vector<double>> jackknife_replicates(const NormalizedReturns& r, double d,
                                                      std::span<const int> lags,
                                                      const JackknifeConfig& cfg, unsigned threads) {
    const Prepared p = prepare(r, d, cfg);
    std::vector<std::vector<double>> out(lags.size());
    parallel_for(lags.size(), threads, [&](std::size_t k) { out[k] = replicates_for_lag(p, lags[k]); });
    return out;
}

double jackknife_spread(std::span<const double> replicates) {
    const std::size_t blocks = replicates.size();
    if (blocks < 2) return 0.0;
    double mean = 0.0;
    for (double v : replicates) mean += v;
    mean /= static_cast<double>(blocks);
    double ss = 0.0;
    for (double v : replicates) ss += (v - mean) * (v - mean);
    const double bd = static_cast<double>(blocks);
    return std::sqrt((bd - 1.0) / bd * ss);
}

std::vector<double> jackknife_sigma(const NormalizedReturns& r, double d, std::span<const int> lags,
                                    const JackknifeConfig& cfg, unsigned threads) {
    const auto reps = jackknife_replicates(r, d, lags, cfg, threads);
    std::vector<double> sigma(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) sigma[k] = jackknife_spread(reps[k]);
    return sigma;
}

void attach_jackknife(CorrelationProfile& profile, const NormalizedReturns& r, const JackknifeConfig& cfg,
                      unsigned threads) {
    profile.sigmas = jackknife_sigma(r, profile.d, profile.lags, cfg, threads);
}

void attach_jackknife(SweepResult& sweep, const NormalizedReturns& r, const JackknifeConfig& cfg,
                      unsigned threads) {
    validate(cfg, r.size());
    parallel_for(sweep.profiles.size(), threads,
                 [&](std::size_t i) { attach_jackknife(sweep.profiles[i], r, cfg, 1); });
}

}  // namespace levcorr

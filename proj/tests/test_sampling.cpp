#include <doctest.h>

#include <random>
#include <set>

#include "levcorr/errors.hpp"
#include "levcorr/sampling.hpp"
#include "oracles.hpp"

using namespace levcorr;

namespace {

TickSeries make(std::vector<std::pair<std::int64_t, double>> pts) {
    TickSeries s;
    for (auto [t, p] : pts) s.records.push_back({t, p, 1.0});
    return s;
}

TickSeries random_ticks(std::uint64_t seed, std::size_t n, std::int64_t t_begin, std::int64_t span) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> ts(t_begin, t_begin + span);
    std::uniform_real_distribution<double> px(50.0, 150.0);
    TickSeries s;
    for (std::size_t i = 0; i < n; ++i) s.records.push_back({ts(rng), px(rng), 1.0});
    std::stable_sort(s.records.begin(), s.records.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    return s;
}

}  // namespace

TEST_CASE("previous-tick rule with a carried-forward gap") {
    const PriceSeries p = resample(make({{0, 10.0}, {150, 11.0}}), 120);
    CHECK(p.t0 == 0);
    REQUIRE(p.size() == 3);
    CHECK(p.prices == std::vector<double>{10.0, 10.0, 11.0});
    CHECK(p.gap_mask == std::vector<bool>{false, true, false});
    CHECK(p.gap_fraction() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("single tick is insufficient") {
    CHECK_THROWS_AS(resample(make({{0, 10.0}}), 120), InsufficientData);
    CHECK_THROWS_AS(resample(make({{5, 10.0}, {100, 11.0}}), 120), InsufficientData);
    CHECK_THROWS_AS(resample(make({{0, 10.0}, {500, 11.0}}), 0), InsufficientData);
}

TEST_CASE("grid is anchored at epoch multiples of delta_t") {
    const PriceSeries p = resample(make({{1000, 1.0}, {1300, 2.0}}), 120);
    CHECK(p.t0 == 1080);
    CHECK(p.t0 % 120 == 0);
    CHECK(p.prices.front() == 1.0);
    CHECK(p.prices.back() == 2.0);
}

TEST_CASE("per-second ticks priced by their timestamp match a direct scan") {
    std::vector<std::pair<std::int64_t, double>> pts;
    for (std::int64_t t = 7; t <= 5000; ++t) pts.push_back({t, static_cast<double>(t)});
    const PriceSeries p = resample(make(pts), 120);
    const auto expected = oracle::previous_tick_scan(pts, p.t0, 120, p.size());
    CHECK(p.prices == expected);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto t = p.time_at(i);
        if (t <= 5000) CHECK(p.prices[i] == static_cast<double>(t));
    }
}

TEST_CASE("random tapes agree with the scan oracle; invariants hold") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TickSeries ticks = random_ticks(seed, 300, 1'000'000 + static_cast<std::int64_t>(seed) * 17, 20'000);
        std::vector<std::pair<std::int64_t, double>> pts;
        std::set<double> traded;
        for (const auto& r : ticks.records) {
            pts.push_back({r.timestamp, r.price});
            traded.insert(r.price);
        }
        const PriceSeries p = resample(ticks, 120);
        CHECK(p.prices == oracle::previous_tick_scan(pts, p.t0, 120, p.size()));
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(traded.count(p.prices[i]) == 1);
            if (p.gap_mask[i]) CHECK(p.prices[i] == p.prices[i - 1]);
        }
    }
}

TEST_CASE("refining delta_t and subsampling reproduces the coarse grid") {
    const TickSeries ticks = random_ticks(42, 2000, 3'600 * 1000, 200'000);
    const PriceSeries fine = resample(ticks, 120);
    const PriceSeries coarse = resample(ticks, 600);
    // Both grids share epoch multiples of 600.
    const auto offset = static_cast<std::size_t>((coarse.t0 - fine.t0) / 120);
    REQUIRE((coarse.t0 - fine.t0) % 120 == 0);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const std::size_t k = offset + 5 * i;
        if (k >= fine.size()) break;
        CHECK(fine.prices[k] == coarse.prices[i]);
    }
}

TEST_CASE("daily closes") {
    const std::int64_t day = seconds_per_day;
    SUBCASE("two consecutive days") {
        const PriceSeries p = daily_close_series(make({{10 * day + 3600, 1.0}, {11 * day + 3600, 2.0}}));
        CHECK(p.size() == 2);
        CHECK(p.t0 == 11 * day);
        CHECK(p.prices == std::vector<double>{1.0, 2.0});
    }
    SUBCASE("an idle day repeats the prior close and is gap-marked") {
        const PriceSeries p =
            daily_close_series(make({{10 * day + 5, 1.0}, {10 * day + 50, 1.5}, {12 * day + 7, 3.0}}));
        REQUIRE(p.size() == 3);
        CHECK(p.prices == std::vector<double>{1.5, 1.5, 3.0});
        CHECK(p.gap_mask == std::vector<bool>{false, true, false});
    }
    SUBCASE("a trade exactly at midnight closes the previous day") {
        const PriceSeries p = daily_close_series(make({{10 * day + 5, 1.0}, {11 * day, 2.0}, {11 * day + 1, 3.0}}));
        REQUIRE(p.size() == 2);
        CHECK(p.prices == std::vector<double>{2.0, 3.0});
    }
    SUBCASE("one day is insufficient") {
        CHECK_THROWS_AS(daily_close_series(make({{10 * day + 5, 1.0}, {10 * day + 500, 2.0}})), InsufficientData);
    }
}

TEST_CASE("daily closes equal a 86400 s resample of random tapes") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const TickSeries ticks = random_ticks(seed, 400, 16'000 * seconds_per_day + 1234, 30 * seconds_per_day);
        const PriceSeries a = daily_close_series(ticks);
        const PriceSeries b = resample(ticks, seconds_per_day);
        CHECK(a.t0 == b.t0);
        CHECK(a.prices == b.prices);
        CHECK(a.gap_mask == b.gap_mask);
    }
}

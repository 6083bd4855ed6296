#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "levcorr/errors.hpp"
#include "levcorr/ingest.hpp"

using namespace levcorr;

TEST_CASE("single trade maps fields directly") {
    const TickSeries s = parse_tick_csv(std::string("1420848000,280.00,1.5\n"));
    REQUIRE(s.size() == 1);
    CHECK(s.records[0].timestamp == 1420848000);
    CHECK(s.records[0].price == 280.0);
    CHECK(s.records[0].volume == 1.5);
}

TEST_CASE("strict mode reports the first malformed line") {
    try {
        parse_tick_csv(std::string("abc,1,2\n"), Strictness::strict);
        FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
        CHECK(e.line_no() == 1);
    }
    try {
        parse_tick_csv(std::string("1,2,3\n2,5\n"), Strictness::strict);
        FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
        CHECK(e.line_no() == 2);
    }
    CHECK_THROWS_AS(parse_tick_csv(std::string("1,2,3,4\n"), Strictness::strict), MalformedLine);
    CHECK_THROWS_AS(parse_tick_csv(std::string("1,nan,3\n"), Strictness::strict), MalformedLine);
    CHECK_THROWS_AS(parse_tick_csv(std::string("1,2,-3\n"), Strictness::strict), MalformedLine);
}

TEST_CASE("non-positive price is its own error") {
    try {
        parse_tick_csv(std::string("1,2,3\n2,0,1\n"), Strictness::strict);
        FAIL("expected NonPositivePrice");
    } catch (const NonPositivePrice& e) {
        CHECK(e.line_no() == 2);
    }
    CHECK_THROWS_AS(parse_tick_csv(std::string("1,-2,1\n"), Strictness::strict), NonPositivePrice);
}

TEST_CASE("records are sorted by timestamp with ties in file order") {
    const TickSeries s = parse_tick_csv(std::string("10,1,1\n5,2,1\n7,3,1\n7,4,1\n"));
    REQUIRE(s.size() == 4);
    CHECK(s.records[0].timestamp == 5);
    CHECK(s.records[1].timestamp == 7);
    CHECK(s.records[1].price == 3.0);
    CHECK(s.records[2].price == 4.0);
    CHECK(s.records[3].timestamp == 10);
}

TEST_CASE("CRLF terminators are accepted") {
    const TickSeries s = parse_tick_csv(std::string("1,2,3\r\n4,5,6\r\n"));
    REQUIRE(s.size() == 2);
    CHECK(s.records[1].volume == 6.0);
}

TEST_CASE("empty input raises EmptyInput") {
    CHECK_THROWS_AS(parse_tick_csv(std::string("")), EmptyInput);
    CHECK_THROWS_AS(parse_tick_csv(std::string("junk\n"), Strictness::lenient), EmptyInput);
}

TEST_CASE("lenient mode: skipped + accepted == lines") {
    const std::string text = "1,2,3\nbad\n\n2,0,1\n3,4,5\n4,5\n5,1e2,0\n";
    ParseStats stats;
    const TickSeries s = parse_tick_csv(text, Strictness::lenient, &stats);
    CHECK(stats.lines == 7);
    CHECK(stats.accepted == 3);
    CHECK(stats.skipped == 4);
    CHECK(stats.accepted + stats.skipped == stats.lines);
    CHECK(s.size() == 3);
    CHECK(s.records[2].price == 100.0);
}

TEST_CASE("parse(serialize(ticks)) round-trips and ordering is permutation-invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> ts(1'400'000'000, 1'400'001'000);
    std::uniform_real_distribution<double> px(1.0, 20000.0), vol(0.0, 50.0);
    TickSeries ticks;
    for (int i = 0; i < 500; ++i) ticks.records.push_back({ts(rng), px(rng), vol(rng)});
    std::stable_sort(ticks.records.begin(), ticks.records.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });

    std::ostringstream out;
    write_tick_csv(out, ticks);
    const TickSeries back = parse_tick_csv(out.str());
    CHECK(back.records == ticks.records);

    for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = ticks.records;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::ostringstream o2;
        write_tick_csv(o2, TickSeries{shuffled, ""});
        const TickSeries parsed = parse_tick_csv(o2.str());
        CHECK(std::is_sorted(parsed.records.begin(), parsed.records.end(),
                             [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; }));
        CHECK(parsed.size() == ticks.size());
    }
}

TEST_CASE("deduplicate collapses exact duplicates only") {
    TickSeries s;
    s.records = {{1, 10.0, 1.0}, {1, 10.0, 1.0}, {1, 11.0, 1.0}, {1, 10.0, 1.0}, {2, 10.0, 1.0}};
    const TickSeries d = deduplicate(s);
    REQUIRE(d.size() == 3);
    CHECK(d.records[0] == TickRecord{1, 10.0, 1.0});
    CHECK(d.records[1] == TickRecord{1, 11.0, 1.0});
    CHECK(d.records[2] == TickRecord{2, 10.0, 1.0});

    TickSeries two;
    two.records = {{5, 1.0, 1.0}, {5, 1.0, 1.0}};
    CHECK(deduplicate(two).size() == 1);

    TickSeries distinct;
    distinct.records = {{5, 1.0, 1.0}, {5, 2.0, 1.0}};
    CHECK(deduplicate(distinct).size() == 2);
}

#include "levcorr/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "levcorr/errors.hpp"
#include "numfmt.hpp"

namespace levcorr {
namespace {

enum class LineStatus { ok, malformed, non_positive_price };

template <class T>
bool parse_field(std::string_view field, T& out) {
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = first + field.size();
    if (*first == '+') return false;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

LineStatus parse_line(std::string_view line, TickRecord& rec, std::string& why) {
    const auto c1 = line.find(',');
    if (c1 == std::string_view::npos) {
        why = "expected 3 fields";
        return LineStatus::malformed;
    }
    const auto c2 = line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
        why = "expected 3 fields";
        return LineStatus::malformed;
    }
    if (!parse_field(line.substr(0, c1), rec.timestamp)) {
        why = "bad timestamp";
        return LineStatus::malformed;
    }
    if (!parse_field(line.substr(c1 + 1, c2 - c1 - 1), rec.price) || !std::isfinite(rec.price)) {
        why = "bad price";
        return LineStatus::malformed;
    }
    if (!parse_field(line.substr(c2 + 1), rec.volume) || !std::isfinite(rec.volume) ||
        rec.volume < 0.0) {
        why = "bad volume";
        return LineStatus::malformed;
    }
    if (!(rec.price > 0.0)) return LineStatus::non_positive_price;
    return LineStatus::ok;
}

}  // namespace

TickSeries parse_tick_csv(std::istream& in, Strictness strictness, ParseStats* stats,
                          std::string source_label) {
    TickSeries out;
    out.source_label = std::move(source_label);
    ParseStats local;

    std::string line;
    std::string why;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (!view.empty() && view.back() == '\r') view.remove_suffix(1);

        TickRecord rec;
        const LineStatus status = parse_line(view, rec, why);
        if (status == LineStatus::ok) {
            out.records.push_back(rec);
            continue;
        }
        if (strictness == Strictness::strict) {
            if (status == LineStatus::non_positive_price) throw NonPositivePrice(line_no);
            throw MalformedLine(line_no, why);
        }
        ++local.skipped;
    }
    local.lines = line_no;
    local.accepted = out.records.size();

    if (out.records.empty()) throw EmptyInput();

    const auto by_time = [](const TickRecord& a, const TickRecord& b) {
        return a.timestamp < b.timestamp;
    };
    if (!std::is_sorted(out.records.begin(), out.records.end(), by_time)) {
        local.reordered = true;
        std::stable_sort(out.records.begin(), out.records.end(), by_time);
    }
    if (stats) *stats = local;
    return out;
}

TickSeries parse_tick_csv(const std::string& text, Strictness strictness, ParseStats* stats,
                          std::string source_label) {
    std::istringstream in(text);
    return parse_tick_csv(in, strictness, stats, std::move(source_label));
}

void write_tick_csv(std::ostream& out, const TickSeries& ticks) {
    std::string buf;
    for (const auto& r : ticks.records) {
        buf.clear();
        buf += std::to_string(r.timestamp);
        buf += ',';
        buf += detail::round_trip(r.price);
        buf += ',';
        buf += detail::round_trip(r.volume);
        buf += '\n';
        out << buf;
    }
}

TickSeries deduplicate(const TickSeries& ticks) {
    TickSeries out;
    out.source_label = ticks.source_label;
    out.records.reserve(ticks.records.size());

    const auto& recs = ticks.records;
    std::size_t group_begin = 0;
    while (group_begin < recs.size()) {
        std::size_t group_end = group_begin + 1;
        while (group_end < recs.size() && recs[group_end].timestamp == recs[group_begin].timestamp)
            ++group_end;
        const std::size_t kept_begin = out.records.size();
        for (std::size_t i = group_begin; i < group_end; ++i) {
            const auto kept_first = out.records.begin() + static_cast<std::ptrdiff_t>(kept_begin);
            if (std::find(kept_first, out.records.end(), recs[i]) == out.records.end())
                out.records.push_back(recs[i]);
        }
        group_begin = group_end;
    }
    return out;
}

}  // namespace levcorr

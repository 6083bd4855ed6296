#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace levcorr {

/// One executed trade: unix seconds, price in quote currency, size in base currency.
struct TickRecord {
    std::int64_t timestamp = 0;
    double price = 0.0;
    double volume = 0.0;

    friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

/// Time-ordered trades from one source. Ties at a timestamp keep file order.
struct TickSeries {
    std::vector<TickRecord> records;
    std::string source_label;

    std::size_t size() const noexcept { return records.size(); }
    bool empty() const noexcept { return records.empty(); }
};

enum class Strictness { strict, lenient };

struct ParseStats {
    std::size_t lines = 0;     // input lines seen (a final terminator does not open a new line)
    std::size_t accepted = 0;
    std::size_t skipped = 0;   // lenient mode only
    bool reordered = false;    // input was not already time-ordered
};

/**
 * Parse a headerless `unixtime,price,amount` stream (LF or CRLF).
 *
 * Strict mode throws MalformedLine / NonPositivePrice at the first bad line;
 * lenient mode skips and counts bad lines. Output is stably sorted by
 * timestamp. Throws EmptyInput when no line is accepted.
 */
TickSeries parse_tick_csv(std::istream& in, Strictness strictness = Strictness::strict,
                          ParseStats* stats = nullptr, std::string source_label = {});

/// Convenience overload over an in-memory buffer.
TickSeries parse_tick_csv(const std::string& text, Strictness strictness = Strictness::strict,
                          ParseStats* stats = nullptr, std::string source_label = {});

/// Write ticks back in the same format; values are printed round-trip exact.
void write_tick_csv(std::ostream& out, const TickSeries& ticks);

/// Collapse exact duplicates (same t, p, v). Distinct trades sharing a timestamp are kept.
TickSeries deduplicate(const TickSeries& ticks);

}  // namespace levcorr

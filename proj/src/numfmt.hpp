#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace levcorr::detail {

// Shortest representation that parses back to the same double.
inline std::string round_trip(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

// Scientific notation, shortest round-trip mantissa.
inline std::string round_trip_sci(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

// Scientific notation with a fixed number of significant digits.
inline std::string sci(double v, int significant = 10) {
    char buf[64];
    auto [end, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, significant - 1);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

}  // namespace levcorr::detail

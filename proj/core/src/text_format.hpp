#pragma once

#include <charconv>
#include <string>

namespace qvord::detail {

/// %.17g-style formatting via std::to_chars: locale-independent,
/// deterministic, and round-trips doubles exactly at precision 17.
inline std::string format_double(double value, int precision = 17) {
    if (value == 0.0)
        value = 0.0; // normalize -0.0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                             precision);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double value, int decimals) {
    if (value == 0.0)
        value = 0.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed,
                             decimals);
    return std::string(buf, res.ptr);
}

} // namespace qvord::detail

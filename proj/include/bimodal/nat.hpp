#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bimodal {

// Unbounded non-negative integer. Every map iterate lives here; no operation
// in this library produces a negative value. Serialization is an exact
// base-10 digit string at any magnitude.
using nat = boost::multiprecision::cpp_int;

inline bool is_odd(const nat& n) { return boost::multiprecision::bit_test(n, 0); }
inline bool is_even(const nat& n) { return !is_odd(n); }

// Number of binary digits; 0 for n == 0.
inline std::uint64_t bit_length(const nat& n) {
    return n.is_zero() ? 0 : static_cast<std::uint64_t>(boost::multiprecision::msb(n)) + 1;
}

inline nat pow2(std::uint64_t e) {
    nat r = 1;
    r <<= static_cast<unsigned>(e);
    return r;
}

inline std::string to_decimal(const nat& n) { return n.str(); }

// Strict base-10 parse: digits only, no sign, no leading zeros except "0"
// itself. Round-trips exactly with to_decimal for all values.
inline std::optional<nat> parse_decimal(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.size() > 1 && s.front() == '0') return std::nullopt;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    nat r = 0;
    for (char c : s) {
        r *= 10;
        r += static_cast<int>(c - '0');
    }
    return r;
}

}  // namespace bimodal

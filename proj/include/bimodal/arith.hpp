#pragma once

#include "bimodal/nat.hpp"

#include <optional>
#include <stdexcept>

namespace bimodal {

// Thrown when a computation contradicts a proven identity. Unlike
// std::invalid_argument (caller error), this always means a bug in the
// engine itself.
struct verification_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum class decomp_form { even_part, odd_plus, odd_minus };

// A number written as 2^e * k, 2^e * k + 1, or 2^e * k - 1 with k odd.
// e counts bits of the source value, so a machine word is plenty.
struct decomposition {
    std::uint64_t exponent = 0;  // e
    nat odd_factor;              // k, always odd
    decomp_form form = decomp_form::even_part;
};

inline nat recompose(const decomposition& d) {
    nat v = d.odd_factor;
    v <<= static_cast<unsigned>(d.exponent);
    switch (d.form) {
        case decomp_form::even_part: return v;
        case decomp_form::odd_plus: return v + 1;
        case decomp_form::odd_minus: return v - 1;
    }
    throw std::logic_error("recompose: bad form");
}

// n = 2^e * k with k odd, i.e. e is the 2-adic valuation of n. For odd n
// this is (0, n). Rejects n == 0, which has no such decomposition.
inline decomposition nu2(const nat& n) {
    if (n.is_zero()) throw std::invalid_argument("nu2: 0 has no odd part");
    auto e = static_cast<std::uint64_t>(boost::multiprecision::lsb(n));
    return {e, n >> static_cast<unsigned>(e), decomp_form::even_part};
}

// Odd n >= 3 as 2^e * k + 1 with k odd and e >= 1. Unique for every such n.
inline decomposition odd_decomp_plus(const nat& n) {
    if (!is_odd(n) || n < 3) throw std::invalid_argument("odd_decomp_plus: need odd n >= 3");
    auto d = nu2(n - 1);
    d.form = decomp_form::odd_plus;
    return d;
}

// Odd n >= 1 as 2^e * k - 1 with k odd and e >= 1.
inline decomposition odd_decomp_minus(const nat& n) {
    if (!is_odd(n)) throw std::invalid_argument("odd_decomp_minus: need odd n");
    auto d = nu2(n + 1);
    d.form = decomp_form::odd_minus;
    return d;
}

// e >= 1 such that n == 2^e + 1, when n has that shape; empty otherwise.
// Equivalent to odd_decomp_plus(n) having odd_factor == 1.
inline std::optional<std::uint64_t> pow2_plus1_exponent(const nat& n) {
    if (!is_odd(n) || n < 3) return std::nullopt;
    nat m = n - 1;
    auto lo = boost::multiprecision::lsb(m);
    auto hi = boost::multiprecision::msb(m);
    if (lo != hi) return std::nullopt;  // more than one bit set: not a power of two
    return static_cast<std::uint64_t>(lo);
}

// n * (n - 1) / 2, exactly. 0 and 1 both map to 0.
inline nat choose2(const nat& n) {
    if (n < 2) return 0;
    if (is_even(n)) return (n >> 1) * (n - 1);
    return n * ((n - 1) >> 1);
}

}  // namespace bimodal

#pragma once

#include "bimodal/arith.hpp"

#include <optional>
#include <string_view>

namespace bimodal {

// The five step rules. Every kind halves even numbers; they differ on odd n:
//   q  : n(n-1)/2                (quadratic, multiplicative)
//   s  : (n^2-1)/4 = ((n-1)/2)((n+1)/2)
//   t  : (3n+1)/2                (compressed Collatz)
//   f  : (3n-1)/2
//   qp : (n+1)n/2
// All five are total on the non-negative integers: each odd branch of a
// quadratic rule is a product of an integer and a half-integer pair that
// multiplies out exactly, and 0 is even.
enum class map_kind { q, s, t, f, qp };

enum class parity_branch { even, odd };

struct step_result {
    nat value;
    parity_branch branch;  // which half of the rule fired; equals parity of the input
};

inline const char* map_name(map_kind k) {
    switch (k) {
        case map_kind::q: return "q";
        case map_kind::s: return "s";
        case map_kind::t: return "t";
        case map_kind::f: return "f";
        case map_kind::qp: return "qp";
    }
    return "?";
}

inline std::optional<map_kind> parse_map(std::string_view s) {
    if (s == "q") return map_kind::q;
    if (s == "s") return map_kind::s;
    if (s == "t") return map_kind::t;
    if (s == "f") return map_kind::f;
    if (s == "qp") return map_kind::qp;
    return std::nullopt;
}

inline step_result step(map_kind kind, const nat& n) {
    if (is_even(n)) return {n >> 1, parity_branch::even};
    switch (kind) {
        case map_kind::q:
            return {choose2(n), parity_branch::odd};
        case map_kind::s:
            return {((n - 1) >> 1) * ((n + 1) >> 1), parity_branch::odd};
        case map_kind::t:
            return {(3 * n + 1) >> 1, parity_branch::odd};
        case map_kind::f:
            return {(3 * n - 1) >> 1, parity_branch::odd};
        case map_kind::qp:
            return {((n + 1) >> 1) * n, parity_branch::odd};
    }
    throw std::logic_error("step: bad map kind");
}

inline nat step_value(map_kind kind, const nat& n) { return step(kind, n).value; }

// Second route for q's odd branch, straight from the 2^e k + 1 split:
// q(2^e k + 1) = 2^(e-1) k (2^e k + 1). Deliberately does not call step(),
// so the two routes can cross-check each other.
inline nat odd_step_decomposed(map_kind kind, const decomposition& d) {
    if (kind != map_kind::q)
        throw std::invalid_argument("odd_step_decomposed: decomposed form is specific to map q");
    if (d.form != decomp_form::odd_plus || d.exponent < 1 || !is_odd(d.odd_factor))
        throw std::invalid_argument("odd_step_decomposed: not a valid 2^e k + 1 decomposition");
    nat half_even = d.odd_factor;
    half_even <<= static_cast<unsigned>(d.exponent - 1);  // 2^(e-1) k
    return half_even * recompose(d);
}

}  // namespace bimodal

#pragma once

#include "bimodal/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

namespace bimodal {

// Round-to-nearest-even conversion to double, the same value a naive
// simulation gets when it parses a big decimal seed into a double.
inline double to_double_rounded(const nat& n) {
    const std::uint64_t bits = bit_length(n);
    if (bits <= 53) return static_cast<double>(n.convert_to<std::uint64_t>());
    if (bits > 1024) return HUGE_VAL;
    const auto shift = static_cast<unsigned>(bits - 54);
    std::uint64_t top54 = (n >> shift).convert_to<std::uint64_t>();
    const bool round_bit = top54 & 1;
    std::uint64_t mant = top54 >> 1;
    const bool tail_nonzero = (n & ((nat(1) << shift) - 1)) != 0;
    if (round_bit && (tail_nonzero || (mant & 1))) ++mant;
    int exp = static_cast<int>(shift) + 1;
    if (mant == (std::uint64_t{1} << 53)) {  // rounding carried into a new bit
        mant >>= 1;
        ++exp;
    }
    return std::ldexp(static_cast<double>(mant), exp);
}

// Exact integer value of a non-negative integral double.
inline std::optional<nat> exact_from_double(double x) {
    if (!std::isfinite(x) || x < 0 || std::trunc(x) != x) return std::nullopt;
    int exp = 0;
    const double frac = std::frexp(x, &exp);              // x = frac * 2^exp, frac in [0.5, 1)
    const double scaled = std::ldexp(frac, 53);           // integral: doubles carry 53 bits
    nat mant = static_cast<std::uint64_t>(scaled);
    if (exp >= 53) return mant << static_cast<unsigned>(exp - 53);
    return mant >> static_cast<unsigned>(53 - exp);
}

// The q rule as a naive double-precision simulation computes it. Above 2^53
// the parity test is meaningless (every such double is an even integer) and
// odd-branch products are rounded, which is exactly the failure the exact
// engine exists to avoid.
inline double float_q_step(double x) {
    if (std::fmod(x, 2.0) == 0.0) return x / 2.0;
    return x * ((x - 1.0) / 2.0);
}

// Side-by-side walk of the exact and double-precision q orbits of one seed.
struct pitfall_report {
    nat seed;
    double float_seed = 0;
    std::uint64_t steps = 0;  // horizon walked on both tracks
    std::optional<std::uint64_t> divergence_step;  // first index where the tracks differ
    std::optional<std::uint64_t> repeat_step;      // double track revisits a value here...
    std::optional<std::uint64_t> repeat_first_seen;  // ...first seen at this step
    double repeated_value = 0;
    std::uint64_t float_cycle_length = 0;  // repeat_step - repeat_first_seen
    bool exact_repeat = false;             // any revisited value on the exact track
    std::uint64_t exact_peak_bits = 0;
};

inline pitfall_report run_pitfall(const nat& seed, std::uint64_t horizon) {
    pitfall_report r;
    r.seed = seed;
    r.float_seed = to_double_rounded(seed);
    r.steps = horizon;

    double fx = r.float_seed;
    nat ex = seed;
    std::map<double, std::uint64_t> float_seen{{fx, 0}};
    std::set<nat> exact_seen{ex};
    r.exact_peak_bits = bit_length(ex);

    auto compare = [&](std::uint64_t step_index) {
        if (r.divergence_step) return;
        auto as_exact = exact_from_double(fx);
        if (!as_exact || *as_exact != ex) r.divergence_step = step_index;
    };
    compare(0);

    for (std::uint64_t i = 1; i <= horizon; ++i) {
        fx = float_q_step(fx);
        ex = step_value(map_kind::q, ex);
        r.exact_peak_bits = std::max(r.exact_peak_bits, bit_length(ex));
        compare(i);
        if (!r.repeat_step) {
            auto [it, inserted] = float_seen.emplace(fx, i);
            if (!inserted) {
                r.repeat_step = i;
                r.repeat_first_seen = it->second;
                r.repeated_value = fx;
                r.float_cycle_length = i - it->second;
            }
        }
        if (!exact_seen.insert(ex).second) r.exact_repeat = true;
    }
    return r;
}

}  // namespace bimodal

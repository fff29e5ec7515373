#pragma once

#include "bimodal/maps.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace bimodal {

// Run limits. A run halts the moment either bound is crossed; hitting a
// limit is an outcome, not an error, and is never a claim about what the
// unbudgeted orbit would do.
struct budget {
    std::uint64_t max_steps = 100000;  // map applications
    std::uint64_t max_bits = 4096;     // ceiling on any iterate's bit length
};

inline void validate(const budget& b) {
    if (b.max_steps == 0 || b.max_bits == 0)
        throw std::invalid_argument("budget: both limits must be positive");
}

struct reached_zero {
    std::uint64_t steps = 0;  // minimal hit time of 0
};

struct reached_cycle {
    std::uint64_t length = 0;
    nat odd_element;                // smallest odd member; for q this is 2^length + 1
    std::uint64_t entry_step = 0;   // q: first hit of odd_element; others: first step on the cycle
};

enum class limit_kind { step_limit, bit_limit };

struct budget_exceeded {
    limit_kind reason = limit_kind::step_limit;
    std::uint64_t steps_done = 0;
    std::uint64_t peak_bits = 0;
};

using orbit_outcome = std::variant<reached_zero, reached_cycle, budget_exceeded>;

struct orbit_summary {
    std::uint64_t steps = 0;      // applications performed before classification
    std::uint64_t peak_bits = 0;  // max bit length over all iterates seen, x0 included
    std::optional<std::uint64_t> first_odd_hit;  // index of the first odd iterate
};

struct orbit_trace {
    std::vector<nat> values;  // x0..x_steps, kept only on request
    orbit_summary summary;
};

struct orbit_result {
    orbit_outcome outcome;
    orbit_trace trace;
};

// Certified cycle membership test for q: an odd iterate equal to 2^m + 1
// sits on the m-cycle through 2^m+1, 2^(m-1)(2^m+1), ..., 2(2^m+1). Every
// q-cycle contains such a value, so this test alone classifies q orbits.
// Rejected for other kinds, where no such characterization holds.
inline std::optional<std::uint64_t> detect_cycle_structural(map_kind kind, const nat& value) {
    if (kind != map_kind::q)
        throw std::invalid_argument("detect_cycle_structural: only map q has a structural cycle test");
    return pow2_plus1_exponent(value);
}

struct cycle_found {
    std::uint64_t length = 0;
    nat witness;  // smallest element on the cycle
};

// Brent's two-pointer cycle finder, usable for every kind. Returns empty if
// the orbit reaches 0 (reported as a zero outcome by run, never as a cycle)
// or if the budget runs out before a repeat. The budget counts applications
// along the primary walk; the short witness pass afterwards is not charged.
inline std::optional<cycle_found> detect_cycle_generic(map_kind kind, const nat& x0,
                                                       const budget& bud) {
    validate(bud);
    if (x0.is_zero() || bit_length(x0) > bud.max_bits) return std::nullopt;

    nat tortoise = x0;
    nat hare = x0;
    std::uint64_t power = 1, lam = 0, steps = 0;
    for (;;) {
        if (power == lam) {
            tortoise = hare;
            power <<= 1;
            lam = 0;
        }
        if (steps >= bud.max_steps) return std::nullopt;
        hare = step_value(kind, hare);
        ++steps;
        ++lam;
        if (hare.is_zero()) return std::nullopt;
        if (bit_length(hare) > bud.max_bits) return std::nullopt;
        if (hare == tortoise) break;
    }

    // lam is the cycle length; walk one period for the smallest element
    nat witness = hare;
    nat cur = hare;
    for (std::uint64_t i = 1; i < lam; ++i) {
        cur = step_value(kind, cur);
        if (cur < witness) witness = cur;
    }
    return cycle_found{lam, witness};
}

namespace detail {

// Entry point and smallest odd member for a cycle of known length lam on the
// orbit of x0. Every cycle of these maps has an odd member: a cycle of only
// even values would be strictly decreasing under halving.
inline reached_cycle locate_cycle(map_kind kind, const nat& x0, std::uint64_t lam) {
    nat a = x0;
    nat b = x0;
    for (std::uint64_t i = 0; i < lam; ++i) b = step_value(kind, b);
    std::uint64_t mu = 0;
    while (a != b) {
        a = step_value(kind, a);
        b = step_value(kind, b);
        ++mu;
    }
    nat odd_member;
    bool found = false;
    nat cur = a;
    for (std::uint64_t i = 0; i < lam; ++i) {
        if (is_odd(cur) && (!found || cur < odd_member)) {
            odd_member = cur;
            found = true;
        }
        cur = step_value(kind, cur);
    }
    if (!found) throw verification_error("locate_cycle: cycle with no odd member");
    return {lam, odd_member, mu};
}

}  // namespace detail

// Iterate kind from x0 until 0 is hit, a cycle is certified, or the budget
// runs out. Deterministic. For q the structural test runs on every odd
// iterate; the other kinds carry a Brent tortoise through the same walk.
inline orbit_result run(map_kind kind, const nat& x0, const budget& bud,
                        bool keep_trace = false) {
    validate(bud);

    orbit_result res;
    orbit_summary& sum = res.trace.summary;
    nat x = x0;
    sum.peak_bits = bit_length(x);
    if (is_odd(x)) sum.first_odd_hit = 0;
    if (keep_trace) res.trace.values.push_back(x);

    if (sum.peak_bits > bud.max_bits) {
        res.outcome = budget_exceeded{limit_kind::bit_limit, 0, sum.peak_bits};
        return res;
    }

    const bool structural = kind == map_kind::q;
    nat tortoise = x;
    std::uint64_t power = 1, lam = 0;
    std::uint64_t steps = 0;

    for (;;) {
        if (x.is_zero()) {
            sum.steps = steps;
            res.outcome = reached_zero{steps};
            return res;
        }
        if (structural && is_odd(x)) {
            if (auto m = pow2_plus1_exponent(x)) {
                sum.steps = steps;
                res.outcome = reached_cycle{*m, x, steps};
                return res;
            }
        }
        if (steps >= bud.max_steps) {
            sum.steps = steps;
            res.outcome = budget_exceeded{limit_kind::step_limit, steps, sum.peak_bits};
            return res;
        }

        if (!structural && power == lam) {
            tortoise = x;
            power <<= 1;
            lam = 0;
        }
        x = step_value(kind, x);
        ++steps;
        ++lam;

        const std::uint64_t bits = bit_length(x);
        if (bits > sum.peak_bits) sum.peak_bits = bits;
        if (!sum.first_odd_hit && is_odd(x)) sum.first_odd_hit = steps;
        if (keep_trace) res.trace.values.push_back(x);

        if (bits > bud.max_bits) {
            sum.steps = steps;
            res.outcome = budget_exceeded{limit_kind::bit_limit, steps, sum.peak_bits};
            return res;
        }
        if (!structural && x == tortoise) {
            sum.steps = steps;
            res.outcome = detail::locate_cycle(kind, x0, lam);
            return res;
        }
    }
}

// One stage of the k-sequence: the odd value opening the stage written as
// 2^e k + 1 (q) or 2^e k - 1 (s), consuming e applications down to the next
// odd low point.
struct k_step {
    std::size_t stage = 0;       // p
    std::uint64_t exponent = 0;  // m_p
    nat multiplier;              // k_p, odd
    nat value;                   // odd iterate opening this stage
};

enum class k_termination {
    unit_multiplier,   // a stage reached k = 1: q is on a cycle, s must fall to 0
    reached_zero,      // the walk hit 1 or 0 outside any stage (powers of two under q)
    budget_exhausted,  // a limit fired before the trace could settle
};

struct k_sequence {
    std::vector<k_step> stages;
    std::uint64_t even_prefix_steps = 0;  // halvings consumed before the first odd value
    k_termination termination = k_termination::budget_exhausted;
    std::uint64_t total_steps = 0;  // prefix plus the sum of stage exponents walked
    std::uint64_t peak_bits = 0;
    nat final_low;  // odd low point after the last completed stage
};

namespace detail {

// Expected low point e applications after the stage's opening value.
inline nat stage_low(map_kind kind, const k_step& st) {
    if (kind == map_kind::q) return st.multiplier * st.value;  // k (2^e k + 1)
    nat half = st.multiplier;                                  // k (2^(e-1) k - 1)
    half <<= static_cast<unsigned>(st.exponent - 1);
    return st.multiplier * (half - 1);
}

}  // namespace detail

// Stage decomposition of an orbit into odd low points, for q and s only.
// Each stage is re-verified against direct iteration: the claimed product
// relation failing would be an engine bug, reported as verification_error.
// Even values are reduced to their odd part by recorded halvings. Under q
// that can only happen before the first stage (every q low point is a
// product of odd factors); under s a stage with exponent 1 bottoms out at
// the even value k(k-1), so halving runs also occur between stages.
inline k_sequence ksequence(map_kind kind, const nat& x0, const budget& bud) {
    if (kind != map_kind::q && kind != map_kind::s)
        throw std::invalid_argument("ksequence: stage decomposition applies to maps q and s only");
    validate(bud);

    k_sequence seq;
    nat x = x0;
    seq.peak_bits = bit_length(x);
    if (seq.peak_bits > bud.max_bits) return seq;  // budget_exhausted, nothing walked

    if (x.is_zero()) {
        seq.termination = k_termination::reached_zero;
        seq.final_low = 0;
        return seq;
    }
    seq.final_low = x;

    for (std::size_t p = 0;;) {
        if (is_even(x)) {
            auto d = nu2(x);
            if (d.exponent > bud.max_steps - seq.total_steps) {
                seq.total_steps = bud.max_steps;
                return seq;  // budget_exhausted inside a halving run
            }
            if (seq.stages.empty()) seq.even_prefix_steps += d.exponent;
            seq.total_steps += d.exponent;
            x = d.odd_factor;
            seq.final_low = x;
        }
        if (kind == map_kind::q && x == 1) {
            seq.termination = k_termination::reached_zero;  // 1 -> 0 on the next step
            return seq;
        }
        auto d = kind == map_kind::q ? odd_decomp_plus(x) : odd_decomp_minus(x);
        k_step st{p, d.exponent, d.odd_factor, x};
        nat expected = detail::stage_low(kind, st);

        // walk the stage, charging the budget per application
        nat cur = x;
        for (std::uint64_t i = 0; i < st.exponent; ++i) {
            if (seq.total_steps >= bud.max_steps) return seq;  // budget_exhausted mid-stage
            cur = step_value(kind, cur);
            ++seq.total_steps;
            const std::uint64_t bits = bit_length(cur);
            if (bits > seq.peak_bits) seq.peak_bits = bits;
            if (bits > bud.max_bits) return seq;  // budget_exhausted mid-stage
        }
        if (cur != expected)
            throw verification_error("ksequence: stage low point disagrees with direct iteration");

        seq.stages.push_back(std::move(st));
        seq.final_low = cur;
        x = cur;
        ++p;
        if (seq.stages.back().multiplier == 1) {
            seq.termination = k_termination::unit_multiplier;
            return seq;
        }
    }
}

// Proven lower bound on the low point after the last stage: 3^(p+1) x0 for q,
// x0 + p + 1 for s, where p indexes the last stage, every k_p >= 3, and each
// stage opens exactly at the previous stage's low point. The chain condition
// is automatic for q; for s it excludes runs broken by an even low point,
// where the odd part after halving can fall below the opening value (from 9
// the stages (1,5) then (1,3) have low points 20 then 6) and no additive
// growth holds. The bound is checked against the actual low point before
// being returned; a violation would contradict the growth argument and is
// reported as a defect.
inline nat growth_certificate(map_kind kind, const std::vector<k_step>& stages, const nat& x0) {
    if (kind != map_kind::q && kind != map_kind::s)
        throw std::invalid_argument("growth_certificate: applies to maps q and s only");
    if (stages.empty())
        throw std::invalid_argument("growth_certificate: no stages");
    if (stages.front().value != x0)
        throw std::invalid_argument("growth_certificate: x0 must open the first stage");
    for (const auto& st : stages) {
        if (st.multiplier == 1)
            throw std::invalid_argument("growth_certificate: stage with k = 1 certifies no growth");
    }
    for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
        if (stages[i + 1].value != detail::stage_low(kind, stages[i]))
            throw std::invalid_argument("growth_certificate: stage chain broken by an even low point");
    }

    nat bound;
    if (kind == map_kind::q) {
        bound = x0;
        for (std::size_t i = 0; i < stages.size(); ++i) bound *= 3;
    } else {
        bound = x0 + stages.size();
    }
    const nat actual = detail::stage_low(kind, stages.back());
    if (actual < bound)
        throw verification_error("growth_certificate: low point fell below the proven bound");
    return bound;
}

}  // namespace bimodal

#pragma once

#include "bimodal/orbit.hpp"

#include <string>
#include <vector>

namespace bimodal {

// The m-cycle family of q: 2^m+1 -> 2^(m-1)(2^m+1) -> ... -> 2(2^m+1) and
// back. Exactly one element (the anchor) is odd.
struct cycle_descriptor {
    std::uint64_t length = 0;
    std::vector<nat> elements;  // elements[0] = 2^m + 1, elements[i] = 2^(m-i)(2^m+1)
};

// Builds the m-cycle and checks by direct iteration that q traverses its
// elements in order and returns to the anchor. A mismatch is an engine bug.
inline cycle_descriptor cycle_family(std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("cycle_family: need m >= 1");
    cycle_descriptor d;
    d.length = m;
    const nat anchor = pow2(m) + 1;
    d.elements.push_back(anchor);
    for (std::uint64_t i = 1; i < m; ++i) {
        nat e = anchor;
        e <<= static_cast<unsigned>(m - i);
        d.elements.push_back(std::move(e));
    }
    nat x = anchor;
    for (std::uint64_t i = 1; i <= m; ++i) {
        x = step_value(map_kind::q, x);
        if (x != d.elements[i % m])
            throw verification_error("cycle_family: traversal left the constructed cycle");
    }
    return d;
}

// First-hit time of 0 under s from 2^m + 1 (sign +1) or 2^m - 1 (sign -1),
// checked against the closed forms m(m+1)/2 + 2 and m(m+1)/2. The closed
// form is asserted as an exact equality, not just an upper bound.
inline std::uint64_t verify_stopping_time(std::uint64_t m, int sign) {
    if (m < 1) throw std::invalid_argument("verify_stopping_time: need m >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("verify_stopping_time: sign is +1 or -1");
    const std::uint64_t expected = m * (m + 1) / 2 + (sign > 0 ? 2 : 0);
    nat x = sign > 0 ? pow2(m) + 1 : pow2(m) - 1;
    std::uint64_t steps = 0;
    while (!x.is_zero()) {
        x = step_value(map_kind::s, x);
        ++steps;
        if (steps > expected)
            throw verification_error("verify_stopping_time: 0 not reached at the closed-form count");
    }
    if (steps != expected)
        throw verification_error("verify_stopping_time: 0 reached before the closed-form count");
    return steps;
}

// The first m iterates of q from x0 = 2^m + 3 against the closed forms
//   x_j = 2^(m-j) (x0+2)(x1+2)...(x_(j-1)+2) + 3          for j = 1..m-1
//   x_m = x_(m-1) [(x0+2)(x1+2)...(x_(m-2)+2) + 1]
// together with the parity pattern (odd up to x_(m-1), x_m even) and strict
// growth of the odd prefix.
struct chain_report {
    std::uint64_t m = 0;
    std::vector<nat> iterates;        // x_0 .. x_m
    std::vector<nat> formula_values;  // same positions, from the closed forms
    bool all_match = false;
    bool parity_ok = false;
    bool strictly_increasing = false;
};

inline chain_report verify_chain(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("verify_chain: need m >= 2");
    chain_report r;
    r.m = m;
    r.iterates.push_back(pow2(m) + 3);
    for (std::uint64_t j = 1; j <= m; ++j)
        r.iterates.push_back(step_value(map_kind::q, r.iterates.back()));

    r.formula_values.push_back(r.iterates[0]);
    nat product = 1;  // (x0+2)(x1+2)...(x_(j-1)+2), grown as j advances
    for (std::uint64_t j = 1; j < m; ++j) {
        product *= r.iterates[j - 1] + 2;
        nat shifted = product;
        shifted <<= static_cast<unsigned>(m - j);
        r.formula_values.push_back(shifted + 3);
    }
    // product now runs through x_(m-2); the last step multiplies, not shifts
    r.formula_values.push_back(r.iterates[m - 1] * (product + 1));

    r.all_match = r.iterates == r.formula_values;
    r.parity_ok = is_even(r.iterates[m]);
    for (std::uint64_t j = 0; j < m && r.parity_ok; ++j)
        r.parity_ok = is_odd(r.iterates[j]);
    r.strictly_increasing = true;
    for (std::uint64_t j = 1; j < m && r.strictly_increasing; ++j)
        r.strictly_increasing = r.iterates[j - 1] < r.iterates[j];

    if (!r.all_match || !r.parity_ok || !r.strictly_increasing)
        throw verification_error("verify_chain: iterates disagree with the closed forms");
    return r;
}

// m applications of q to x0 = 2^m k + 1 must land exactly on k * x0.
// Returns the landing value.
inline nat verify_odd_product_rule(std::uint64_t m, const nat& k) {
    if (m < 1) throw std::invalid_argument("verify_odd_product_rule: need m >= 1");
    if (!is_odd(k)) throw std::invalid_argument("verify_odd_product_rule: k must be odd");
    nat x0 = k;
    x0 <<= static_cast<unsigned>(m);
    x0 += 1;
    nat x = x0;
    for (std::uint64_t i = 0; i < m; ++i) x = step_value(map_kind::q, x);
    if (x != k * x0)
        throw verification_error("verify_odd_product_rule: landing value is not k * x0");
    return x;
}

// Budgeted evidence gathering for the unboundedness conjectures about q.
// The verdict never asserts unboundedness: a probe either watched the orbit
// terminate or ran out of budget, nothing more.
struct probe_report {
    nat start;
    std::size_t stages_with_k_gt_1 = 0;
    std::optional<nat> certified_growth_bound;  // present when at least one stage kept k > 1
    std::uint64_t peak_bits = 0;
    std::uint64_t steps_walked = 0;
    std::string verdict;  // "terminated (cycle)", "terminated (zero)", "inconclusive-budget-exhausted"
};

inline probe_report probe_conjecture(map_kind kind, const nat& x0, const budget& bud) {
    if (kind != map_kind::q)
        throw std::invalid_argument("probe_conjecture: growth certificates exist for map q only");
    auto seq = ksequence(map_kind::q, x0, bud);

    probe_report r;
    r.start = x0;
    r.peak_bits = seq.peak_bits;
    r.steps_walked = seq.total_steps;

    std::vector<k_step> prefix;
    for (const auto& st : seq.stages) {
        if (st.multiplier == 1) break;
        prefix.push_back(st);
    }
    r.stages_with_k_gt_1 = prefix.size();
    if (!prefix.empty())
        r.certified_growth_bound = growth_certificate(map_kind::q, prefix, prefix.front().value);

    switch (seq.termination) {
        case k_termination::unit_multiplier: r.verdict = "terminated (cycle)"; break;
        case k_termination::reached_zero: r.verdict = "terminated (zero)"; break;
        case k_termination::budget_exhausted: r.verdict = "inconclusive-budget-exhausted"; break;
    }
    return r;
}

}  // namespace bimodal

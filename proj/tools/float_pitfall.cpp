// Companion demonstration: why this engine refuses floating point.
//
// Runs the q rule twice from the same seed, once exactly and once the way a
// quick double-precision simulation would, and reports where the two tracks
// part ways and where the double track manufactures a cycle. The default
// seed 9*2^60 + 1 is one step past what a double can store: it rounds to
// 9*2^60, which drains to 9 = 2^3 + 1 and parades around the 3-cycle
// {9, 36, 18}, while the exact orbit of the true seed grows without ever
// repeating a value.

#include "bimodal/float_orbit.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"double-precision q simulation vs the exact engine"};
    std::string seed_str = "10376293541461622785";  // 9*2^60 + 1
    std::uint64_t steps = 70;
    app.add_option("--seed", seed_str, "start value (decimal)")->capture_default_str();
    app.add_option("--steps", steps, "steps walked on both tracks")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    auto seed = bimodal::parse_decimal(seed_str);
    if (!seed) {
        std::fprintf(stderr, "not a non-negative decimal: %s\n", seed_str.c_str());
        return 2;
    }

    auto r = bimodal::run_pitfall(*seed, steps);
    std::printf("seed: %s\n", bimodal::to_decimal(r.seed).c_str());
    auto stored = bimodal::exact_from_double(r.float_seed);
    std::printf("stored as double: %s\n", stored ? bimodal::to_decimal(*stored).c_str() : "(non-integral)");
    std::printf("steps walked on both tracks: %" PRIu64 "\n", r.steps);

    if (r.divergence_step)
        std::printf("tracks first diverge at step %" PRIu64 "%s\n", *r.divergence_step,
                    *r.divergence_step == 0 ? " (the seed itself does not fit in a double)" : "");
    else
        std::printf("tracks never diverged within the horizon\n");

    if (r.repeat_step) {
        auto repeated = bimodal::exact_from_double(r.repeated_value);
        std::printf("double track repeats value %s at step %" PRIu64 " (first seen at step %" PRIu64
                    "): an apparent %" PRIu64 "-cycle\n",
                    repeated ? bimodal::to_decimal(*repeated).c_str() : "?", *r.repeat_step,
                    *r.repeat_first_seen, r.float_cycle_length);
    } else {
        std::printf("double track shows no repeat within the horizon\n");
    }

    std::printf("exact track repeats: %s (peak iterate %" PRIu64 " bits)\n",
                r.exact_repeat ? "yes" : "none", r.exact_peak_bits);

    if (r.repeat_step && !r.exact_repeat)
        std::printf("verdict: the double simulation reports a cycle the exact orbit never enters\n");
    return 0;
}

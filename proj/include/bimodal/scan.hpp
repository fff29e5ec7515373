#pragma once

#include "bimodal/orbit.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bimodal {

// One classified value. Big integers are always carried as exact decimal
// strings in both text formats: they routinely exceed what 64-bit integers
// and doubles can represent.
struct scan_record {
    nat n;
    map_kind map = map_kind::q;
    orbit_outcome outcome;
    std::uint64_t peak_bits = 0;
};

inline scan_record classify(map_kind kind, const nat& n, const budget& bud) {
    auto r = run(kind, n, bud);
    return {n, kind, std::move(r.outcome), r.trace.summary.peak_bits};
}

inline const char* outcome_tag(const orbit_outcome& o) {
    if (std::holds_alternative<reached_zero>(o)) return "zero";
    if (std::holds_alternative<reached_cycle>(o)) return "cycle";
    return "budget";
}

inline const char* limit_tag(limit_kind r) {
    return r == limit_kind::step_limit ? "step_limit" : "bit_limit";
}

// The steps column: hit time for zero, entry step for cycles, applications
// performed for budget outcomes.
inline std::uint64_t steps_field(const orbit_outcome& o) {
    if (const auto* z = std::get_if<reached_zero>(&o)) return z->steps;
    if (const auto* c = std::get_if<reached_cycle>(&o)) return c->entry_step;
    return std::get<budget_exceeded>(o).steps_done;
}

// One JSON object per record, no trailing newline. cycle_len/odd_element
// appear only for cycle outcomes, reason only for budget outcomes.
inline std::string to_jsonl(const scan_record& r) {
    nlohmann::ordered_json j;
    j["n"] = to_decimal(r.n);
    j["map"] = map_name(r.map);
    j["outcome"] = outcome_tag(r.outcome);
    j["steps"] = steps_field(r.outcome);
    if (const auto* c = std::get_if<reached_cycle>(&r.outcome)) {
        j["cycle_len"] = c->length;
        j["odd_element"] = to_decimal(c->odd_element);
    }
    j["peak_bits"] = r.peak_bits;
    if (const auto* b = std::get_if<budget_exceeded>(&r.outcome)) j["reason"] = limit_tag(b->reason);
    return j.dump();
}

inline const char* csv_header() { return "n,map,outcome,steps,cycle_len,odd_element,peak_bits,reason"; }

inline std::string to_csv(const scan_record& r) {
    std::string line = to_decimal(r.n);
    line += ',';
    line += map_name(r.map);
    line += ',';
    line += outcome_tag(r.outcome);
    line += ',';
    line += std::to_string(steps_field(r.outcome));
    line += ',';
    if (const auto* c = std::get_if<reached_cycle>(&r.outcome)) {
        line += std::to_string(c->length);
        line += ',';
        line += to_decimal(c->odd_element);
    } else {
        line += ',';
    }
    line += ',';
    line += std::to_string(r.peak_bits);
    line += ',';
    if (const auto* b = std::get_if<budget_exceeded>(&r.outcome)) line += limit_tag(b->reason);
    return line;
}

struct scan_totals {
    std::uint64_t zero = 0;
    std::uint64_t cycle = 0;
    std::uint64_t budget = 0;
};

struct scan_config {
    map_kind map = map_kind::q;
    nat from;
    nat to;
    budget bud;
    unsigned jobs = 0;  // 0 = available parallelism
};

// Classifies every n in [from, to] and hands records to sink in ascending n
// order, always from the calling thread. Workers fill fixed-size blocks in
// whatever order they finish; emission reorders them, so the output stream
// is byte-identical for any worker count.
template <typename Sink>
scan_totals scan_range(const scan_config& cfg, Sink&& sink) {
    validate(cfg.bud);
    if (cfg.from > cfg.to) throw std::invalid_argument("scan_range: from > to");
    const nat span = cfg.to - cfg.from + 1;
    if (span > std::numeric_limits<std::uint64_t>::max())
        throw std::invalid_argument("scan_range: range does not fit a 64-bit count");
    const std::uint64_t count = span.convert_to<std::uint64_t>();

    scan_totals totals;
    auto tally = [&totals](const scan_record& rec) {
        if (std::holds_alternative<reached_zero>(rec.outcome))
            ++totals.zero;
        else if (std::holds_alternative<reached_cycle>(rec.outcome))
            ++totals.cycle;
        else
            ++totals.budget;
    };

    unsigned jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    constexpr std::uint64_t block_size = 256;
    const std::uint64_t n_blocks = (count + block_size - 1) / block_size;
    if (jobs > n_blocks) jobs = static_cast<unsigned>(n_blocks);

    if (jobs <= 1) {
        nat n = cfg.from;
        for (std::uint64_t i = 0; i < count; ++i, ++n) {
            scan_record rec = classify(cfg.map, n, cfg.bud);
            tally(rec);
            sink(rec);
        }
        return totals;
    }

    std::atomic<std::uint64_t> next_block{0};
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, std::vector<scan_record>> ready;
    std::exception_ptr worker_error;

    auto worker = [&] {
        try {
            for (;;) {
                const std::uint64_t b = next_block.fetch_add(1);
                if (b >= n_blocks) return;
                const std::uint64_t lo = b * block_size;
                const std::uint64_t hi = std::min(lo + block_size, count);
                std::vector<scan_record> block;
                block.reserve(hi - lo);
                nat n = cfg.from + lo;
                for (std::uint64_t i = lo; i < hi; ++i, ++n)
                    block.push_back(classify(cfg.map, n, cfg.bud));
                {
                    std::lock_guard<std::mutex> lock(mu);
                    ready.emplace(b, std::move(block));
                }
                cv.notify_all();
            }
        } catch (...) {
            {
                std::lock_guard<std::mutex> lock(mu);
                if (!worker_error) worker_error = std::current_exception();
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);

    std::exception_ptr failure;
    for (std::uint64_t b = 0; b < n_blocks && !failure; ++b) {
        std::vector<scan_record> block;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return worker_error || ready.count(b) != 0; });
            if (worker_error) {
                failure = worker_error;
                break;
            }
            block = std::move(ready.at(b));
            ready.erase(b);
        }
        try {
            for (const auto& rec : block) {
                tally(rec);
                sink(rec);
            }
        } catch (...) {
            failure = std::current_exception();
        }
    }
    if (failure) next_block.store(n_blocks);  // drain remaining work
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return totals;
}

}  // namespace bimodal

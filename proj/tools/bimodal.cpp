// Command-line surface: single-orbit runs, parallel range scans, cycle
// tables, verification suites, and conjecture probes. Records go to stdout
// (or --out), diagnostics to stderr.
//
// Exit codes: 0 success (probes are never failures), 1 I/O error,
// 2 usage error, 3 verification defect.

#include "bimodal/float_orbit.hpp"
#include "bimodal/scan.hpp"
#include "bimodal/theorems.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_usage = 2;
constexpr int exit_defect = 3;

struct common_opts {
    std::string map = "q";
    std::uint64_t max_steps = 100000;
    std::uint64_t max_bits = 4096;
    std::string out;  // empty = stdout

    bimodal::map_kind kind() const { return *bimodal::parse_map(map); }
    bimodal::budget bud() const { return {max_steps, max_bits}; }
};

void add_map_flag(CLI::App* cmd, common_opts& o) {
    cmd->add_option("--map", o.map, "map kind")
        ->check(CLI::IsMember({"q", "s", "t", "f", "qp"}))
        ->capture_default_str();
}

void add_budget_flags(CLI::App* cmd, common_opts& o) {
    cmd->add_option("--max-steps", o.max_steps, "step budget per run")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-bits", o.max_bits, "bit-length ceiling per iterate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_out_flag(CLI::App* cmd, common_opts& o) {
    cmd->add_option("--out", o.out, "output path (default stdout)");
}

// Opens --out or hands back stdout. A path that cannot be opened is an I/O
// error, reported by the caller as exit code 1.
struct record_sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    bool ok = true;

    explicit record_sink(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) {
            ok = false;
            return;
        }
        os = &file;
    }
    std::ostream& out() { return *os; }
    bool good() { return ok && os->good(); }
};

bimodal::nat parse_or_throw(const std::string& s, const char* what) {
    auto v = bimodal::parse_decimal(s);
    if (!v) throw CLI::ValidationError(std::string(what) + ": not a non-negative decimal: " + s);
    return *v;
}

std::string outcome_summary(const bimodal::orbit_outcome& o) {
    using namespace bimodal;
    if (const auto* z = std::get_if<reached_zero>(&o))
        return "zero steps=" + std::to_string(z->steps);
    if (const auto* c = std::get_if<reached_cycle>(&o))
        return "cycle len=" + std::to_string(c->length) + " entry=" + std::to_string(c->entry_step) +
               " odd=" + to_decimal(c->odd_element);
    const auto& b = std::get<budget_exceeded>(o);
    return std::string("budget reason=") + limit_tag(b.reason) +
           " steps=" + std::to_string(b.steps_done) + " peak_bits=" + std::to_string(b.peak_bits);
}

int cmd_orbit(const std::string& n_str, const common_opts& o, bool trace, bool kseq,
              const std::string& format) {
    using namespace bimodal;
    const nat n = parse_or_throw(n_str, "orbit");
    record_sink sink(o.out);
    if (!sink.ok) {
        std::cerr << "orbit: cannot open " << o.out << "\n";
        return exit_io;
    }

    auto result = run(o.kind(), n, o.bud(), trace);
    if (trace) {
        for (const auto& v : result.trace.values) sink.out() << to_decimal(v) << "\n";
    }
    if (kseq) {
        auto seq = ksequence(o.kind(), n, o.bud());
        if (seq.even_prefix_steps != 0)
            sink.out() << "even prefix: " << seq.even_prefix_steps << " halvings\n";
        for (const auto& st : seq.stages)
            sink.out() << "stage " << st.stage << ": (m=" << st.exponent
                       << ", k=" << to_decimal(st.multiplier) << ") value=" << to_decimal(st.value)
                       << "\n";
        switch (seq.termination) {
            case k_termination::unit_multiplier: sink.out() << "kseq: reached k=1\n"; break;
            case k_termination::reached_zero: sink.out() << "kseq: reached zero\n"; break;
            case k_termination::budget_exhausted: sink.out() << "kseq: budget exhausted\n"; break;
        }
    }

    scan_record rec{n, o.kind(), std::move(result.outcome), result.trace.summary.peak_bits};
    if (format == "jsonl") {
        sink.out() << to_jsonl(rec) << "\n";
    } else if (format == "csv") {
        sink.out() << csv_header() << "\n" << to_csv(rec) << "\n";
    } else {
        sink.out() << outcome_summary(rec.outcome) << "\n";
    }
    sink.out().flush();
    return sink.good() ? exit_ok : exit_io;
}

int cmd_scan(const std::string& from_str, const std::string& to_str, const common_opts& o,
             unsigned jobs, const std::string& format) {
    using namespace bimodal;
    scan_config cfg;
    cfg.from = parse_or_throw(from_str, "scan --from");
    cfg.to = parse_or_throw(to_str, "scan --to");
    if (cfg.from > cfg.to) throw CLI::ValidationError("scan: --from must not exceed --to");
    cfg.map = o.kind();
    cfg.bud = o.bud();
    cfg.jobs = jobs;

    record_sink sink(o.out);
    if (!sink.ok) {
        std::cerr << "scan: cannot open " << o.out << "\n";
        return exit_io;
    }
    const bool csv = format == "csv";
    if (csv) sink.out() << csv_header() << "\n";
    auto totals = scan_range(cfg, [&](const scan_record& rec) {
        sink.out() << (csv ? to_csv(rec) : to_jsonl(rec)) << "\n";
    });
    sink.out().flush();
    if (!sink.good()) {
        std::cerr << "scan: write failure\n";
        return exit_io;
    }
    std::cerr << "scanned " << to_decimal(cfg.to - cfg.from + 1) << " values: zero=" << totals.zero
              << " cycle=" << totals.cycle << " budget=" << totals.budget << "\n";
    return exit_ok;
}

int cmd_cycles(std::uint64_t m_from, std::uint64_t m_to, const common_opts& o) {
    using namespace bimodal;
    if (m_from < 1 || m_from > m_to) throw CLI::ValidationError("cycles: need 1 <= m-from <= m-to");
    record_sink sink(o.out);
    if (!sink.ok) {
        std::cerr << "cycles: cannot open " << o.out << "\n";
        return exit_io;
    }
    for (std::uint64_t m = m_from; m <= m_to; ++m) {
        auto d = cycle_family(m);
        sink.out() << "m=" << m << ": [";
        for (std::size_t i = 0; i < d.elements.size(); ++i)
            sink.out() << (i ? ", " : "") << to_decimal(d.elements[i]);
        sink.out() << "]\n";
    }
    sink.out().flush();
    return sink.good() ? exit_ok : exit_io;
}

struct verify_bounds {
    std::uint64_t m_from = 0;  // 0 = suite default
    std::uint64_t m_to = 0;
    std::uint64_t k_to = 9;
};

int run_suite(const std::string& suite, const verify_bounds& vb) {
    using namespace bimodal;
    int failures = 0;
    auto report = [&failures](bool ok, const std::string& label, const std::string& why = "") {
        if (ok) {
            std::cout << "ok " << label << "\n";
        } else {
            ++failures;
            std::cout << "FAIL " << label << (why.empty() ? "" : ": " + why) << "\n";
        }
    };
    auto attempt = [&report](const std::string& label, const std::function<void()>& body) {
        try {
            body();
            report(true, label);
        } catch (const std::exception& e) {
            report(false, label, e.what());
        }
    };

    const bool all = suite == "all";
    if (all || suite == "lemma1") {
        const std::uint64_t lo = vb.m_from ? vb.m_from : 1;
        const std::uint64_t hi = vb.m_to ? vb.m_to : 20;
        for (std::uint64_t m = lo; m <= hi; ++m)
            attempt("lemma1 m=" + std::to_string(m), [m] {
                auto d = cycle_family(m);
                if (d.elements.size() != m) throw verification_error("element count != m");
            });
    }
    if (all || suite == "lemma2") {
        const std::uint64_t lo = vb.m_from ? vb.m_from : 1;
        const std::uint64_t hi = vb.m_to ? vb.m_to : 15;
        for (std::uint64_t m = lo; m <= hi; ++m)
            for (int sign : {+1, -1})
                attempt("lemma2 m=" + std::to_string(m) + " sign=" + (sign > 0 ? "+1" : "-1"),
                        [m, sign] { verify_stopping_time(m, sign); });
    }
    if (all || suite == "chain") {
        const std::uint64_t lo = std::max<std::uint64_t>(2, vb.m_from ? vb.m_from : 2);
        const std::uint64_t hi = vb.m_to ? vb.m_to : 10;
        for (std::uint64_t m = lo; m <= hi; ++m)
            attempt("chain m=" + std::to_string(m), [m] { verify_chain(m); });
    }
    if (all || suite == "odom") {
        const std::uint64_t lo = vb.m_from ? vb.m_from : 1;
        const std::uint64_t hi = vb.m_to ? vb.m_to : 8;
        for (std::uint64_t m = lo; m <= hi; ++m)
            for (std::uint64_t k = 1; k <= vb.k_to; k += 2)
                attempt("odom m=" + std::to_string(m) + " k=" + std::to_string(k), [m, k] {
                    nat landed = verify_odd_product_rule(m, k);
                    if (k >= 3) {
                        nat x0 = (nat(k) << static_cast<unsigned>(m)) + 1;
                        if (landed < 3 * x0) throw verification_error("low point below 3 x0");
                    }
                });
    }
    if (failures != 0) {
        std::cout << failures << " case(s) failed\n";
        return exit_defect;
    }
    return exit_ok;
}

int cmd_probe(const std::string& start_str, const common_opts& o) {
    using namespace bimodal;
    const nat start = parse_or_throw(start_str, "probe --start");
    auto r = probe_conjecture(o.kind(), start, o.bud());
    std::cout << "probe start=" << to_decimal(r.start) << " map=" << o.map << "\n"
              << "stages with k>1: " << r.stages_with_k_gt_1 << "\n"
              << "certified growth lower bound: "
              << (r.certified_growth_bound ? to_decimal(*r.certified_growth_bound) : "none") << "\n"
              << "peak bits: " << r.peak_bits << "\n"
              << "steps walked: " << r.steps_walked << "\n"
              << "verdict: " << r.verdict << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact orbit engine for even/odd bimodal integer maps"};
    app.require_subcommand(1);

    common_opts orbit_o;
    std::string orbit_n;
    bool orbit_trace = false, orbit_kseq = false;
    std::string orbit_format = "summary";
    auto* orbit_cmd = app.add_subcommand("orbit", "classify a single orbit");
    orbit_cmd->add_option("n", orbit_n, "start value (decimal)")->required();
    add_map_flag(orbit_cmd, orbit_o);
    add_budget_flags(orbit_cmd, orbit_o);
    add_out_flag(orbit_cmd, orbit_o);
    orbit_cmd->add_flag("--trace", orbit_trace, "print every iterate");
    orbit_cmd->add_flag("--kseq", orbit_kseq, "print the stage decomposition (maps q and s)");
    orbit_cmd->add_option("--format", orbit_format, "summary, jsonl or csv")
        ->check(CLI::IsMember({"summary", "jsonl", "csv"}))
        ->capture_default_str();

    common_opts scan_o;
    std::string scan_from, scan_to;
    unsigned scan_jobs = 0;
    std::string scan_format = "jsonl";
    auto* scan_cmd = app.add_subcommand("scan", "classify every value in a range");
    scan_cmd->add_option("--from", scan_from, "range start (decimal)")->required();
    scan_cmd->add_option("--to", scan_to, "range end, inclusive (decimal)")->required();
    add_map_flag(scan_cmd, scan_o);
    add_budget_flags(scan_cmd, scan_o);
    add_out_flag(scan_cmd, scan_o);
    scan_cmd->add_option("--jobs", scan_jobs, "worker count (default: available parallelism)");
    scan_cmd->add_option("--format", scan_format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}))
        ->capture_default_str();

    common_opts cycles_o;
    std::uint64_t m_from = 1, m_to = 10;
    auto* cycles_cmd = app.add_subcommand("cycles", "print and verify the m-cycle table of q");
    cycles_cmd->add_option("--m-from", m_from, "first cycle length")->capture_default_str();
    cycles_cmd->add_option("--m-to", m_to, "last cycle length")->capture_default_str();
    add_out_flag(cycles_cmd, cycles_o);

    std::string suite;
    verify_bounds vb;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("suite", suite, "lemma1, lemma2, chain, odom or all")
        ->required()
        ->check(CLI::IsMember({"lemma1", "lemma2", "chain", "odom", "all"}));
    verify_cmd->add_option("--m-from", vb.m_from, "override the suite's lower m bound");
    verify_cmd->add_option("--m-to", vb.m_to, "override the suite's upper m bound");
    verify_cmd->add_option("--k-to", vb.k_to, "largest odd k (odom)")->capture_default_str();

    common_opts probe_o;
    std::string probe_start;
    auto* probe_cmd = app.add_subcommand("probe", "budgeted unboundedness probe (map q)");
    probe_cmd->add_option("--start", probe_start, "start value (decimal)")->required();
    add_map_flag(probe_cmd, probe_o);
    add_budget_flags(probe_cmd, probe_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (orbit_cmd->parsed())
            return cmd_orbit(orbit_n, orbit_o, orbit_trace, orbit_kseq, orbit_format);
        if (scan_cmd->parsed()) return cmd_scan(scan_from, scan_to, scan_o, scan_jobs, scan_format);
        if (cycles_cmd->parsed()) return cmd_cycles(m_from, m_to, cycles_o);
        if (verify_cmd->parsed()) return run_suite(suite, vb);
        if (probe_cmd->parsed()) return cmd_probe(probe_start, probe_o);
    } catch (const bimodal::verification_error& e) {
        std::cerr << "verification defect: " << e.what() << "\n";
        return exit_defect;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_usage;
}

// Drives the installed binaries end to end: output shapes, ordering,
// determinism across worker counts, and the exit-code contract
// (0 ok, 1 I/O, 2 usage, 3 defect).

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct exec_result {
    int exit_code = -1;
    std::string output;
};

exec_result exec(const std::string& cmd) {
    exec_result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string cli = BIMODAL_CLI;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("orbit summaries") {
    auto r = exec(cli + " orbit 20 --map q 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "cycle len=2 entry=2 odd=5\n");

    r = exec(cli + " orbit 16 --map q 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "zero steps=5\n");

    r = exec(cli + " orbit 7 --map q 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.starts_with("budget reason=bit_limit"));

    r = exec(cli + " orbit 20 --format jsonl 2>/dev/null");
    CHECK(r.output ==
          "{\"n\":\"20\",\"map\":\"q\",\"outcome\":\"cycle\",\"steps\":2,\"cycle_len\":2,"
          "\"odd_element\":\"5\",\"peak_bits\":5}\n");

    r = exec(cli + " orbit 16 --format csv 2>/dev/null");
    CHECK(r.output == "n,map,outcome,steps,cycle_len,odd_element,peak_bits,reason\n16,q,zero,5,,,5,\n");
}

TEST_CASE("orbit trace and stage listing") {
    auto r = exec(cli + " orbit 16 --trace 2>/dev/null");
    CHECK(r.output == "16\n8\n4\n2\n1\n0\nzero steps=5\n");

    r = exec(cli + " orbit 7 --map q --kseq 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("stage 0: (m=1, k=3) value=7") != std::string::npos);
    CHECK(r.output.find("stage 1: (m=2, k=5) value=21") != std::string::npos);
    CHECK(r.output.find("stage 2: (m=3, k=13) value=105") != std::string::npos);
    CHECK(r.output.find("stage 3: (m=2, k=341) value=1365") != std::string::npos);

    r = exec(cli + " orbit 20 --kseq --map s 2>/dev/null");
    CHECK(r.output.find("even prefix: 2 halvings") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(exec(cli + " orbit twenty 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " orbit 5 --map z 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " frobnicate 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " scan --from 5 --to 4 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " orbit 07 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " probe --start 7 --map s 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " orbit 5 --kseq --map t 2>/dev/null").exit_code == 2);
    CHECK(exec(cli + " --help >/dev/null 2>&1").exit_code == 0);
}

TEST_CASE("unwritable output path exits with 1") {
    CHECK(exec(cli + " scan --from 0 --to 3 --out /nonexistent-dir/x.jsonl 2>/dev/null").exit_code == 1);
    CHECK(exec(cli + " orbit 5 --out /nonexistent-dir/x.txt 2>/dev/null").exit_code == 1);
}

TEST_CASE("cycle table") {
    auto r = exec(cli + " cycles --m-from 1 --m-to 3 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "m=1: [3]\nm=2: [5, 10]\nm=3: [9, 36, 18]\n");

    r = exec(cli + " cycles --m-from 2 --m-to 2 2>/dev/null");
    CHECK(r.output == "m=2: [5, 10]\n");

    CHECK(exec(cli + " cycles --m-from 3 --m-to 2 2>/dev/null").exit_code == 2);
}

TEST_CASE("verification suites") {
    auto r = exec(cli + " verify lemma2 --m-to 5 2>/dev/null");
    CHECK(r.exit_code == 0);
    std::size_t ok_lines = 0;
    for (std::size_t at = 0; (at = r.output.find("ok ", at)) != std::string::npos; at += 3) ++ok_lines;
    CHECK(ok_lines == 10);  // both signs for m = 1..5

    CHECK(exec(cli + " verify chain --m-to 6 2>/dev/null").exit_code == 0);
    CHECK(exec(cli + " verify odom --m-to 4 2>/dev/null").exit_code == 0);
    CHECK(exec(cli + " verify lemma1 --m-to 8 2>/dev/null").exit_code == 0);
    CHECK(exec(cli + " verify nonsense 2>/dev/null").exit_code == 2);
}

TEST_CASE("probe rendering") {
    auto r = exec(cli + " probe --start 9 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("verdict: terminated (cycle)") != std::string::npos);

    r = exec(cli + " probe --start 7 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("verdict: inconclusive-budget-exhausted") != std::string::npos);
    CHECK(r.output.find("certified growth lower bound: ") != std::string::npos);

    r = exec(cli + " probe --start 16 2>/dev/null");
    CHECK(r.output.find("verdict: terminated (zero)") != std::string::npos);
}

TEST_CASE("scan output and summary") {
    auto r = exec(cli + " scan --map q --from 0 --to 0 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "{\"n\":\"0\",\"map\":\"q\",\"outcome\":\"zero\",\"steps\":0,\"peak_bits\":0}\n");

    r = exec(cli + " scan --map s --from 1 --to 100 --out /dev/null 2>&1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("scanned 100 values:") != std::string::npos);
    CHECK(r.output.find("cycle=0") != std::string::npos);
}

TEST_CASE("scans are byte-identical across worker counts") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "bimodal_cli_test";
    fs::create_directories(dir);
    const auto a = dir / "a.jsonl";
    const auto b = dir / "b.jsonl";

    CHECK(exec(cli + " scan --map q --from 0 --to 4000 --jobs 1 --out " + a.string() +
               " 2>/dev/null").exit_code == 0);
    CHECK(exec(cli + " scan --map q --from 0 --to 4000 --jobs 7 --out " + b.string() +
               " 2>/dev/null").exit_code == 0);
    const auto sa = slurp(a);
    CHECK(!sa.empty());
    CHECK(sa == slurp(b));
    fs::remove_all(dir);
}

TEST_CASE("pitfall companion names the seed and the divergence step") {
    const std::string pitfall = FLOAT_PITFALL_BIN;
    auto r = exec(pitfall + " 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("seed: 10376293541461622785") != std::string::npos);
    CHECK(r.output.find("diverge at step 0") != std::string::npos);
    CHECK(r.output.find("apparent 3-cycle") != std::string::npos);
    CHECK(r.output.find("exact track repeats: none") != std::string::npos);
    CHECK(r.output.find("reports a cycle the exact orbit never enters") != std::string::npos);
}

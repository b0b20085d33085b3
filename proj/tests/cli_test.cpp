#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using ucp::cli::run_cli;
using ucp::testing::fixture_path;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err, /*color=*/false);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("run prints a single JSON object with sorted keys") {
    CliResult ok = run({"run", "--program", fixture_path("kelly_quarters.ucp")});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "{\"status\":\"ok\",\"value\":90}\n");

    CliResult fail = run({"run", "--program", fixture_path("carla_cookies.ucp")});
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("\"status\":\"assert_failure\"") != std::string::npos);
    CHECK(fail.out.find("\"failed_span\"") != std::string::npos);

    CliResult fractional = run({"run", "--program", "-"},
                               "def solution():\n    x = 11 / 2\n    return x\n");
    CHECK(fractional.exit_code == 0);
    CHECK(fractional.out == "{\"status\":\"ok\",\"value\":5.5}\n");
}

TEST_CASE("run reports parse and runtime failures with exit 2") {
    CliResult parse = run({"run", "--program", "-"}, "def solution(: return");
    CHECK(parse.exit_code == 2);
    CHECK(parse.out.find("\"status\":\"parse_error\"") != std::string::npos);

    CliResult div0 = run({"run", "--program", "-"}, "def solution():\n    return 1 / 0\n");
    CHECK(div0.exit_code == 2);
    CHECK(div0.out.find("\"status\":\"runtime_error\"") != std::string::npos);
}

TEST_CASE("check exit codes distinguish clean, warnings, and mismatches") {
    CHECK(run({"check", "--program", fixture_path("kelly_quarters.ucp")}).exit_code == 0);

    CliResult broken = run({"check", "--program", "-"}, "def solution(: return");
    CHECK(broken.exit_code == 2);
    CHECK(broken.out.find("parse error") != std::string::npos);

    CliResult wendi = run({"check", "--program", fixture_path("wendi_feed.ucp")});
    CHECK(wendi.exit_code == 1);
    CHECK(wendi.out.find("UCP002") != std::string::npos);

    CliResult mismatch = run({"check", "--program", fixture_path("internet_speed.ucp")});
    CHECK(mismatch.exit_code == 2);
    CHECK(mismatch.out.find("unit mismatch") != std::string::npos);

    CliResult json = run({"check", "--format", "json", "--program",
                          fixture_path("internet_speed.ucp")});
    CHECK(json.exit_code == 2);
    CHECK(json.out.find("\"judgments\"") != std::string::npos);
}

TEST_CASE("strip emits a runnable scaffold-free program") {
    CliResult stripped = run({"strip", "--program", fixture_path("kelly_quarters.ucp")});
    CHECK(stripped.exit_code == 0);
    CHECK(stripped.out.find("assert") == std::string::npos);
    CHECK(stripped.out.find("_unit") == std::string::npos);

    CliResult rerun = run({"run", "--program", "-"}, stripped.out);
    CHECK(rerun.out == "{\"status\":\"ok\",\"value\":90}\n");
}

TEST_CASE("synthesize inserts asserts and flags skips on stderr") {
    std::string source =
        "def solution():\n"
        "    a = 6\n"
        "    a_unit = Counter({\"x\": 1})\n"
        "    b = 3\n"
        "    b_unit = Counter({\"y\": 1})\n"
        "    c = a * b\n"
        "    c_unit = Counter({\"x\": 1, \"y\": 1})\n"
        "    return c\n";
    CliResult ok = run({"synthesize", "--program", "-"}, source);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("assert c_unit == a_unit + b_unit") != std::string::npos);

    std::string undeclared = "def solution():\n    a = 1\n    b = a * a\n    return b\n";
    CliResult skipped = run({"synthesize", "--program", "-"}, undeclared);
    CHECK(skipped.exit_code == 1);
    CHECK(skipped.err.find("UCP202") != std::string::npos);
}

TEST_CASE("annotate writes kept examples atomically and summarizes") {
    auto out_path = temp_path("ucp_cli_kept.jsonl");
    std::filesystem::remove(out_path);
    CliResult r = run({"annotate", "--problems", fixture_path("corpus/problems.jsonl"),
                       "--candidates", fixture_path("corpus/candidates.jsonl"), "--out",
                       out_path.string(), "--format", "json"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"kept\":3") != std::string::npos);
    std::string written = slurp(out_path);
    CHECK(std::count(written.begin(), written.end(), '\n') == 3);
    CHECK(!std::filesystem::exists(out_path.string() + ".tmp"));
}

TEST_CASE("stats reproduces the published percentages from synthetic corpora") {
    std::ostringstream problems;
    for (int i = 0; i < 1319; ++i)
        problems << "{\"id\": \"t" << i << "\", \"answer\": 1}\n";
    std::ostringstream labels;
    for (int i = 0; i < 1319; ++i)
        labels << "{\"problem_id\": \"t" << i << "\", \"unit_class\": \""
               << (i < 755 ? "single" : "multiple") << "\"}\n";
    auto problems_path = temp_path("ucp_cli_stats_p.jsonl");
    auto labels_path = temp_path("ucp_cli_stats_l.jsonl");
    std::ofstream(problems_path) << problems.str();
    std::ofstream(labels_path) << labels.str();

    CliResult r = run({"stats", "--problems", problems_path.string(), "--labels",
                       labels_path.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"single_percent\":57.2") != std::string::npos);
    CHECK(r.out.find("\"multiple_percent\":42.8") != std::string::npos);
}

TEST_CASE("analyze output is byte-identical across runs and parallelism") {
    std::vector<std::string> base = {"analyze", "--problems",
                                     fixture_path("corpus/problems.jsonl"), "--candidates",
                                     fixture_path("corpus/candidates.jsonl"), "--labels",
                                     fixture_path("corpus/labels.jsonl")};
    auto with_parallelism = [&](const std::string& n) {
        std::vector<std::string> args = base;
        args.push_back("--parallelism");
        args.push_back(n);
        return run(args);
    };
    CliResult one_a = with_parallelism("1");
    CliResult one_b = with_parallelism("1");
    CliResult four = with_parallelism("4");
    CHECK(one_a.exit_code == 0);
    CHECK(one_a.out == one_b.out);
    CHECK(one_a.out == four.out);
    CHECK(one_a.out.find("\"wrong_counter_or_assert\": 3") != std::string::npos);

    std::vector<std::string> csv_args = base;
    csv_args.push_back("--emit");
    csv_args.push_back("csv");
    CliResult csv = run(csv_args);
    CHECK(csv.out.find("asserts,total,correct,accuracy_percent\n") == 0);
    CHECK(csv.out.find("4,1,1,100.0") != std::string::npos);
}

TEST_CASE("usage errors exit with 64") {
    CHECK(run({"frobnicate"}).exit_code == 64);
    CHECK(run({"run"}).exit_code == 64);                      // missing --program
    CHECK(run({"analyze", "--problems", "x"}).exit_code == 64);  // missing --candidates
    CHECK(run({"run", "--no-such-flag", "x"}).exit_code == 64);
}

TEST_CASE("missing input files exit with 2") {
    CHECK(run({"run", "--program", "/nonexistent/path.ucp"}).exit_code == 2);
    CHECK(run({"annotate", "--problems", "/nonexistent.jsonl", "--candidates",
               "/also-missing.jsonl", "--out", temp_path("x.jsonl").string()})
              .exit_code == 2);
}

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "ucp/corpus.hpp"
#include "ucp/interpreter.hpp"
#include "ucp/parser.hpp"
#include "ucp/printer.hpp"

using namespace ucp;
using ucp::testing::fixture_path;
using ucp::testing::read_fixture;

namespace {

std::vector<ProblemRecord> fixture_problems() {
    return load_problems(fixture_path("corpus/problems.jsonl"));
}

std::vector<CandidateProgram> fixture_candidates(const std::vector<ProblemRecord>& problems) {
    return load_candidates(fixture_path("corpus/candidates.jsonl"), problems);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path, std::ios::trunc);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("answer matching uses a relative tolerance") {
    CHECK(answer_match(90, 90));
    CHECK(answer_match(5.000000001, 5));
    CHECK(!answer_match(11, 12));
    CHECK(!answer_match(90.001, 90));
    CHECK(answer_match(1e9 + 100, 1e9));  // relative, not absolute
    double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(!answer_match(nan, 5));
}

TEST_CASE("the annotation filter keeps the consistent programs") {
    auto problems = fixture_problems();
    auto candidates = fixture_candidates(problems);
    REQUIRE(problems.size() == 6);
    REQUIRE(candidates.size() == 6);

    FilterResult result = annotate_filter(problems, candidates);
    CHECK(result.kept.size() == 3);
    CHECK(result.rejected.size() == 3);
    for (const auto& [id, reason] : result.rejected) {
        CAPTURE(id);
        CHECK(reason == RejectReason::AssertFailure);
    }
    std::vector<std::string> kept_ids;
    for (const AnnotatedExample& e : result.kept) kept_ids.push_back(e.problem_id);
    std::sort(kept_ids.begin(), kept_ids.end());
    CHECK(kept_ids == std::vector<std::string>{"kelly_quarters", "tom_ship", "wendi_feed"});

    // kept and rejected partition the candidates
    CHECK(result.kept.size() + result.rejected.size() == candidates.size());
}

TEST_CASE("the filter is idempotent on kept examples") {
    auto problems = fixture_problems();
    FilterResult first = annotate_filter(problems, fixture_candidates(problems));
    std::vector<CandidateProgram> again;
    for (const AnnotatedExample& e : first.kept) again.push_back({e.problem_id, e.program_text});
    FilterResult second = annotate_filter(problems, again);
    CHECK(second.kept.size() == first.kept.size());
    CHECK(second.rejected.empty());
}

TEST_CASE("rejection reasons are specific") {
    auto problems = fixture_problems();

    // a correct program with its asserts removed fails the construct requirement
    Program kelly = ucp::testing::parse_fixture("kelly_quarters.ucp");
    Program no_asserts = kelly;
    no_asserts.statements.erase(
        std::remove_if(no_asserts.statements.begin(), no_asserts.statements.end(),
                       [](const Statement& s) { return std::holds_alternative<AssertStmt>(s.node); }),
        no_asserts.statements.end());
    FilterResult r1 = annotate_filter(
        problems, {{"kelly_quarters", print_program(no_asserts)}});
    REQUIRE(r1.rejected.size() == 1);
    CHECK(r1.rejected[0].second == RejectReason::MissingUnitConstructs);

    // unparseable
    FilterResult r2 = annotate_filter(problems, {{"kelly_quarters", "def solution(: return"}});
    CHECK(r2.rejected[0].second == RejectReason::ParseError);

    // wrong answer: run the mosaic program (strips to 4) against the wrong gold
    FilterResult r3 = annotate_filter(
        problems, {{"tom_ship", read_fixture("kelly_quarters.ucp")}});
    CHECK(r3.rejected[0].second == RejectReason::WrongAnswer);

    // runtime error
    FilterResult r4 = annotate_filter(
        problems,
        {{"tom_ship", "def solution():\n    x = 1 / 0\n    return x\n"}});
    CHECK(r4.rejected[0].second == RejectReason::RuntimeError);

    // a second passing candidate for an already-kept problem is superseded
    std::string good = read_fixture("tom_ship.ucp");
    FilterResult r5 = annotate_filter(problems, {{"tom_ship", good}, {"tom_ship", good}});
    CHECK(r5.kept.size() == 1);
    REQUIRE(r5.rejected.size() == 1);
    CHECK(r5.rejected[0].second == RejectReason::Superseded);
}

TEST_CASE("filter results do not depend on parallelism") {
    auto problems = fixture_problems();
    auto candidates = fixture_candidates(problems);
    FilterResult serial = annotate_filter(problems, candidates, 1);
    FilterResult parallel = annotate_filter(problems, candidates, 4);
    CHECK(annotated_to_jsonl(serial.kept) == annotated_to_jsonl(parallel.kept));
    CHECK(serial.rejected == parallel.rejected);
}

TEST_CASE("corpus statistics reproduce the published splits") {
    // 4480 of 7473 annotated -> 59.9%
    std::vector<ProblemRecord> problems(7473);
    for (size_t i = 0; i < problems.size(); ++i) problems[i].id = "p" + std::to_string(i);
    std::vector<AnnotatedExample> kept(4480);
    for (size_t i = 0; i < kept.size(); ++i) kept[i].problem_id = "p" + std::to_string(i);
    StatsSummary uc = corpus_stats(problems, kept, {});
    CHECK(uc.total_problems == 7473);
    CHECK(uc.annotated == 4480);
    CHECK(uc.annotated_percent() == doctest::Approx(59.9));

    // 755 single / 564 multiple of 1319 -> 57.2% / 42.8%
    std::vector<ProblemRecord> test_problems(1319);
    for (size_t i = 0; i < test_problems.size(); ++i) test_problems[i].id = "t" + std::to_string(i);
    std::vector<UnitClassLabel> labels;
    for (size_t i = 0; i < 1319; ++i)
        labels.push_back({"t" + std::to_string(i), i < 755 ? UnitClass::Single : UnitClass::Multiple});
    StatsSummary split = corpus_stats(test_problems, {}, labels);
    CHECK(split.single_labels == 755);
    CHECK(split.multiple_labels == 564);
    CHECK(split.single_percent() == doctest::Approx(57.2));
    CHECK(split.multiple_percent() == doctest::Approx(42.8));
}

TEST_CASE("empty corpus reports zero percentages") {
    StatsSummary s = corpus_stats({}, {}, {});
    CHECK(s.total_problems == 0);
    CHECK(s.annotated_percent() == 0.0);
    CHECK(s.single_percent() == 0.0);
}

TEST_CASE("percentages derive from counts at one decimal place") {
    CHECK(percent_1dp(4480, 7473) == doctest::Approx(59.9));
    CHECK(percent_1dp(2, 3) == doctest::Approx(66.7));
    CHECK(percent_1dp(1, 2) == doctest::Approx(50.0));
    CHECK(percent_1dp(0, 0) == 0.0);
}

TEST_CASE("malformed corpus files raise errors with positions") {
    auto bad_json = temp_file("ucp_bad.jsonl", "{\"id\": \"a\", \"answer\": 1}\nnot json\n");
    CHECK_THROWS_WITH_AS(load_problems(bad_json.string()),
                         doctest::Contains(":2"), CorpusError);

    auto dup = temp_file("ucp_dup.jsonl",
                         "{\"id\": \"a\", \"answer\": 1}\n{\"id\": \"a\", \"answer\": 2}\n");
    CHECK_THROWS_AS(load_problems(dup.string()), CorpusError);

    auto bad_answer = temp_file("ucp_badans.jsonl", "{\"id\": \"a\", \"answer\": \"x\"}\n");
    CHECK_THROWS_AS(load_problems(bad_answer.string()), CorpusError);

    auto problems = temp_file("ucp_p.jsonl", "{\"id\": \"a\", \"answer\": 1}\n");
    auto unknown = temp_file("ucp_unknown.jsonl",
                             "{\"problem_id\": \"zzz\", \"program\": \"x\"}\n");
    auto loaded = load_problems(problems.string());
    CHECK_THROWS_AS(load_candidates(unknown.string(), loaded), CorpusError);

    auto bad_label = temp_file("ucp_lbl.jsonl",
                               "{\"problem_id\": \"a\", \"unit_class\": \"both\"}\n");
    CHECK_THROWS_AS(load_labels(bad_label.string()), CorpusError);
}

TEST_CASE("annotated examples serialize one JSON object per line") {
    auto problems = fixture_problems();
    FilterResult result = annotate_filter(problems, fixture_candidates(problems));
    std::string jsonl = annotated_to_jsonl(result.kept);
    size_t lines = std::count(jsonl.begin(), jsonl.end(), '\n');
    CHECK(lines == 3);

    auto path = temp_file("ucp_annotated.jsonl", jsonl);
    std::vector<AnnotatedExample> reloaded = load_annotated(path.string());
    REQUIRE(reloaded.size() == 3);
    CHECK(reloaded[0].problem_id == result.kept[0].problem_id);
    CHECK(reloaded[0].program_text == result.kept[0].program_text);
}

#include "ucp/analysis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ucp/interpreter.hpp"
#include "ucp/parser.hpp"

namespace ucp {

namespace {

using nlohmann::json;

// Fallback for unparseable candidates so every one still lands in a bucket:
// count top-level `assert` tokens textually.
int textual_assert_count(const std::string& text) {
    int count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t p = line.find_first_not_of(" \t");
        if (p != std::string::npos && line.compare(p, 7, "assert ") == 0) ++count;
    }
    return count;
}

std::string format_percent(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", p);
    return buf;
}

}  // namespace

const char* to_string(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::CorrectAnswer: return "correct_answer";
        case ErrorCategory::WrongAnswer: return "wrong_answer";
        case ErrorCategory::WrongCounterOrAssert: return "wrong_counter_or_assert";
        case ErrorCategory::CompilationError: return "compilation_error";
    }
    return "";
}

int assert_count(const Program& program) {
    int n = 0;
    for (const Statement& s : program.statements)
        if (std::holds_alternative<AssertStmt>(s.node)) ++n;
    return n;
}

CategorizedResult categorize_detail(const std::string& program_text, double gold) {
    CategorizedResult r;
    Program program;
    try {
        program = parse_program(program_text);
    } catch (const ParseError&) {
        r.category = ErrorCategory::CompilationError;
        r.asserts = textual_assert_count(program_text);
        r.full_status = "parse_error";
        return r;
    }
    r.asserts = assert_count(program);

    ExecutionOutcome full = execute(program, ExecMode::Full);
    r.full_status = to_string(full.status);
    if (full.status == ExecStatus::Ok) {
        r.category = answer_match(full.value, gold) ? ErrorCategory::CorrectAnswer
                                                    : ErrorCategory::WrongAnswer;
        return r;
    }

    // Assert failures, runtime errors and missing returns are retried without
    // the unit scaffolding; only a stripped run that reaches the right answer
    // blames the scaffolding.
    ExecutionOutcome stripped = execute(strip(program), ExecMode::Stripped);
    r.stripped_status = to_string(stripped.status);
    if (stripped.status == ExecStatus::Ok) {
        r.category = answer_match(stripped.value, gold) ? ErrorCategory::WrongCounterOrAssert
                                                        : ErrorCategory::WrongAnswer;
    } else {
        r.category = ErrorCategory::CompilationError;
    }
    return r;
}

ErrorCategory categorize(const std::string& program_text, double gold) {
    return categorize_detail(program_text, gold).category;
}

AnalysisReport aggregate(const std::vector<EvaluatedCandidate>& results,
                         const std::vector<UnitClassLabel>& labels) {
    std::map<std::string, std::string> label_of;
    for (const UnitClassLabel& l : labels)
        label_of[l.problem_id] = l.unit_class == UnitClass::Single ? "single" : "multiple";

    AnalysisReport report;
    report.total = results.size();
    report.categories[ErrorCategory::CorrectAnswer] = 0;
    report.categories[ErrorCategory::WrongAnswer] = 0;
    report.categories[ErrorCategory::WrongCounterOrAssert] = 0;
    report.categories[ErrorCategory::CompilationError] = 0;

    for (const EvaluatedCandidate& ec : results) {
        const CategorizedResult& cr = ec.result;
        bool correct = cr.category == ErrorCategory::CorrectAnswer;
        report.categories[cr.category] += 1;

        auto lit = label_of.find(ec.problem_id);
        std::string cls = lit == label_of.end() ? "unlabeled" : lit->second;
        ClassSplit& split = report.classes[cls];
        split.total += 1;
        if (correct) split.correct += 1;

        AssertBucket& bucket = report.buckets[cr.asserts];
        bucket.total += 1;
        if (correct) bucket.correct += 1;

        report.details.push_back(
            {ec.problem_id, cr.category, cr.asserts, cls, cr.full_status, cr.stripped_status});
    }
    return report;
}

AnalysisReport analyze_corpus(const std::vector<ProblemRecord>& problems,
                              const std::vector<CandidateProgram>& candidates,
                              const std::vector<UnitClassLabel>& labels,
                              unsigned parallelism) {
    std::map<std::string, double> gold;
    for (const ProblemRecord& p : problems) gold[p.id] = p.gold_value;
    for (const CandidateProgram& c : candidates)
        if (!gold.count(c.problem_id))
            throw CorpusError("candidate references unknown problem id `" + c.problem_id + "`");

    std::vector<EvaluatedCandidate> results(candidates.size());
    auto evaluate = [&](size_t i) {
        results[i].problem_id = candidates[i].problem_id;
        results[i].result =
            categorize_detail(candidates[i].program_text, gold.at(candidates[i].problem_id));
    };
    if (parallelism <= 1 || candidates.size() < 2) {
        for (size_t i = 0; i < candidates.size(); ++i) evaluate(i);
    } else {
        std::atomic<size_t> next{0};
        size_t workers = std::min<size_t>(parallelism, candidates.size());
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (size_t i; (i = next.fetch_add(1)) < candidates.size();) evaluate(i);
            });
        for (std::thread& t : pool) t.join();
    }
    return aggregate(results, labels);
}

std::string report_to_json(const AnalysisReport& report) {
    json j;
    j["total"] = report.total;
    json cats;
    for (const auto& [cat, count] : report.categories) cats[to_string(cat)] = count;
    j["categories"] = cats;

    double overall = percent_1dp(
        report.categories.count(ErrorCategory::CorrectAnswer)
            ? report.categories.at(ErrorCategory::CorrectAnswer)
            : 0,
        report.total);
    j["overall_accuracy_percent"] = overall;

    json classes;
    for (const auto& [cls, split] : report.classes) {
        classes[cls] = {{"total", split.total},
                        {"correct", split.correct},
                        {"accuracy_percent", percent_1dp(split.correct, split.total)}};
    }
    j["classes"] = classes;

    json buckets = json::array();
    for (const auto& [asserts, bucket] : report.buckets) {
        buckets.push_back({{"asserts", asserts},
                           {"total", bucket.total},
                           {"correct", bucket.correct},
                           {"accuracy_percent", percent_1dp(bucket.correct, bucket.total)}});
    }
    j["buckets"] = buckets;

    json details = json::array();
    for (const DetailRow& row : report.details) {
        json d = {{"problem_id", row.problem_id},
                  {"category", to_string(row.category)},
                  {"asserts", row.asserts},
                  {"unit_class", row.unit_class},
                  {"full_status", row.full_status}};
        if (!row.stripped_status.empty()) d["stripped_status"] = row.stripped_status;
        details.push_back(d);
    }
    j["details"] = details;
    return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& report) {
    std::ostringstream os;
    size_t correct = report.categories.count(ErrorCategory::CorrectAnswer)
                         ? report.categories.at(ErrorCategory::CorrectAnswer)
                         : 0;
    os << "evaluated " << report.total << " candidate(s), overall accuracy "
       << format_percent(percent_1dp(correct, report.total)) << "%\n\n";

    os << "category                  count\n";
    for (const auto& [cat, count] : report.categories) {
        char line[64];
        std::snprintf(line, sizeof(line), "%-25s %5zu\n", to_string(cat), count);
        os << line;
    }
    os << "\nunit class    total  correct  accuracy\n";
    for (const auto& [cls, split] : report.classes) {
        char line[80];
        std::snprintf(line, sizeof(line), "%-12s %6zu %8zu %8s%%\n", cls.c_str(), split.total,
                      split.correct, format_percent(percent_1dp(split.correct, split.total)).c_str());
        os << line;
    }
    os << "\nasserts  total  correct  accuracy\n";
    for (const auto& [asserts, bucket] : report.buckets) {
        char line[80];
        std::snprintf(line, sizeof(line), "%7d %6zu %8zu %8s%%\n", asserts, bucket.total,
                      bucket.correct,
                      format_percent(percent_1dp(bucket.correct, bucket.total)).c_str());
        os << line;
    }
    return os.str();
}

std::string buckets_to_csv(const AnalysisReport& report) {
    std::ostringstream os;
    os << "asserts,total,correct,accuracy_percent\n";
    for (const auto& [asserts, bucket] : report.buckets) {
        os << asserts << ',' << bucket.total << ',' << bucket.correct << ','
           << format_percent(percent_1dp(bucket.correct, bucket.total)) << "\n";
    }
    return os.str();
}

}  // namespace ucp

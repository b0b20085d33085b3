#pragma once

#include <map>
#include <string>
#include <vector>

#include "ucp/ast.hpp"
#include "ucp/corpus.hpp"

namespace ucp {

// Four-way outcome taxonomy, assigned by full execution plus strip-and-rerun:
// a program that only fails because of its unit scaffolding (asserts pass
// once removed, and the arithmetic is right) is WrongCounterOrAssert.
enum class ErrorCategory { CorrectAnswer, WrongAnswer, WrongCounterOrAssert, CompilationError };

const char* to_string(ErrorCategory category);

struct CategorizedResult {
    ErrorCategory category = ErrorCategory::CompilationError;
    int asserts = 0;                 // assert statements in the candidate
    std::string full_status;         // finer detail retained for reports
    std::string stripped_status;     // empty when the strip rerun never ran
};

/// Total over any input text: parse failures are CompilationError; a full-mode
/// failure is retried with asserts and unit declarations stripped, and only
/// counts as WrongCounterOrAssert when the stripped run matches the gold.
ErrorCategory categorize(const std::string& program_text, double gold);
CategorizedResult categorize_detail(const std::string& program_text, double gold);

/// Number of assert statements.
int assert_count(const Program& program);

struct EvaluatedCandidate {
    std::string problem_id;
    CategorizedResult result;
};

struct ClassSplit {
    size_t total = 0;
    size_t correct = 0;
};

struct AssertBucket {
    size_t total = 0;
    size_t correct = 0;
};

struct DetailRow {
    std::string problem_id;
    ErrorCategory category;
    int asserts = 0;
    std::string unit_class;  // "single", "multiple", or "unlabeled"
    std::string full_status;
    std::string stripped_status;
};

struct AnalysisReport {
    size_t total = 0;
    std::map<ErrorCategory, size_t> categories;
    std::map<std::string, ClassSplit> classes;   // keyed single/multiple/unlabeled
    std::map<int, AssertBucket> buckets;         // keyed by assert count
    std::vector<DetailRow> details;              // input order
};

/// Deterministic fold of per-candidate results; ids without a label group
/// under "unlabeled".
AnalysisReport aggregate(const std::vector<EvaluatedCandidate>& results,
                         const std::vector<UnitClassLabel>& labels);

/// Evaluate a candidate batch against its problems and aggregate. The output
/// is identical for any parallelism setting.
AnalysisReport analyze_corpus(const std::vector<ProblemRecord>& problems,
                              const std::vector<CandidateProgram>& candidates,
                              const std::vector<UnitClassLabel>& labels,
                              unsigned parallelism = 1);

std::string report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);
std::string buckets_to_csv(const AnalysisReport& report);

}  // namespace ucp

#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ucp {

struct ProblemRecord {
    std::string id;
    std::string question;
    std::string gold_answer;  // exact decimal as written in the input
    double gold_value = 0;
};

struct CandidateProgram {
    std::string problem_id;
    std::string program_text;
};

enum class UnitClass { Single, Multiple };

struct UnitClassLabel {
    std::string problem_id;
    UnitClass unit_class = UnitClass::Single;
};

struct AnnotatedExample {
    std::string problem_id;
    std::string program_text;
    std::string gold_answer;
    double predicted = 0;
};

enum class RejectReason {
    ParseError,
    AssertFailure,
    RuntimeError,
    WrongAnswer,
    MissingUnitConstructs,
    Superseded,  // an earlier candidate for the same problem was already kept
};

const char* to_string(RejectReason reason);

struct FilterResult {
    std::vector<AnnotatedExample> kept;
    std::vector<std::pair<std::string, RejectReason>> rejected;
};

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The annotation filter: a candidate is kept iff it parses, executes to
/// completion with all asserts passing, matches the gold answer, and contains
/// at least one unit declaration and one assert. The first kept candidate per
/// problem wins; kept and rejected together partition the candidates.
FilterResult annotate_filter(const std::vector<ProblemRecord>& problems,
                             const std::vector<CandidateProgram>& candidates,
                             unsigned parallelism = 1);

/// |predicted - gold| <= 1e-6 * max(1, |gold|); false for non-finite input.
bool answer_match(double predicted, double gold);

// Percentages are always derived from the stored counts.
struct StatsSummary {
    size_t total_problems = 0;
    size_t annotated = 0;
    size_t single_labels = 0;
    size_t multiple_labels = 0;

    double annotated_percent() const;
    double single_percent() const;   // of labelled problems
    double multiple_percent() const;
};

StatsSummary corpus_stats(const std::vector<ProblemRecord>& problems,
                          const std::vector<AnnotatedExample>& kept,
                          const std::vector<UnitClassLabel>& labels);

/// Percentage n/d rounded to one decimal place; 0.0 when d == 0.
double percent_1dp(size_t n, size_t d);

// Line-delimited JSON input, one record per line.
//   problems.jsonl    {"id": ..., "question": ..., "answer": ...}
//   candidates.jsonl  {"problem_id": ..., "program": ...}
//   labels.jsonl      {"problem_id": ..., "unit_class": "single"|"multiple"}
std::vector<ProblemRecord> load_problems(const std::string& path);
std::vector<CandidateProgram> load_candidates(const std::string& path,
                                              const std::vector<ProblemRecord>& problems);
std::vector<UnitClassLabel> load_labels(const std::string& path);

/// kept examples as {"problem_id": ..., "program": ..., "answer": ...} lines.
std::string annotated_to_jsonl(const std::vector<AnnotatedExample>& kept);
std::vector<AnnotatedExample> load_annotated(const std::string& path);

}  // namespace ucp

#include "ucp/corpus.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ucp/interpreter.hpp"
#include "ucp/parser.hpp"

namespace ucp {

namespace {

using nlohmann::json;

double parse_decimal(const std::string& text, const std::string& context) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0') || !std::isfinite(v))
        throw CorpusError(context + ": `" + text + "` is not a finite number");
    return v;
}

// Accepts a JSON number or a numeric string; returns the exact text plus its value.
std::pair<std::string, double> decimal_field(const json& j, const std::string& key,
                                             const std::string& context) {
    if (!j.contains(key)) throw CorpusError(context + ": missing field `" + key + "`");
    const json& v = j.at(key);
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        return {s, parse_decimal(s, context)};
    }
    if (v.is_number()) {
        std::string s = v.dump();
        return {s, v.get<double>()};
    }
    throw CorpusError(context + ": field `" + key + "` must be a number");
}

std::string string_field(const json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw CorpusError(context + ": missing string field `" + key + "`");
    return j.at(key).get<std::string>();
}

template <typename Fn>
void for_each_jsonl(const std::string& path, Fn fn) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw CorpusError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        fn(j, path + ":" + std::to_string(line_no));
    }
}

template <typename Fn>
void parallel_for(size_t n, unsigned parallelism, Fn fn) {
    if (parallelism <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    unsigned workers = std::min<size_t>(parallelism, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

bool has_unit_constructs(const Program& program) {
    bool has_decl = false, has_assert = false;
    for (const Statement& s : program.statements) {
        has_decl |= std::holds_alternative<UnitAssignStmt>(s.node);
        has_assert |= std::holds_alternative<AssertStmt>(s.node);
    }
    return has_decl && has_assert;
}

}  // namespace

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::ParseError: return "parse_error";
        case RejectReason::AssertFailure: return "assert_failure";
        case RejectReason::RuntimeError: return "runtime_error";
        case RejectReason::WrongAnswer: return "wrong_answer";
        case RejectReason::MissingUnitConstructs: return "missing_unit_constructs";
        case RejectReason::Superseded: return "superseded";
    }
    return "";
}

bool answer_match(double predicted, double gold) {
    if (!std::isfinite(predicted) || !std::isfinite(gold)) return false;
    return std::fabs(predicted - gold) <= 1e-6 * std::max(1.0, std::fabs(gold));
}

FilterResult annotate_filter(const std::vector<ProblemRecord>& problems,
                             const std::vector<CandidateProgram>& candidates,
                             unsigned parallelism) {
    std::map<std::string, const ProblemRecord*> by_id;
    for (const ProblemRecord& p : problems) by_id[p.id] = &p;
    for (const CandidateProgram& c : candidates)
        if (!by_id.count(c.problem_id))
            throw CorpusError("candidate references unknown problem id `" + c.problem_id + "`");

    struct Verdict {
        bool keep = false;
        RejectReason reason = RejectReason::WrongAnswer;
        double predicted = 0;
    };
    std::vector<Verdict> verdicts(candidates.size());

    parallel_for(candidates.size(), parallelism, [&](size_t i) {
        const CandidateProgram& c = candidates[i];
        const ProblemRecord& problem = *by_id.at(c.problem_id);
        Verdict& v = verdicts[i];
        Program program;
        try {
            program = parse_program(c.program_text);
        } catch (const ParseError&) {
            v.reason = RejectReason::ParseError;
            return;
        }
        ExecutionOutcome outcome = execute(program, ExecMode::Full);
        switch (outcome.status) {
            case ExecStatus::AssertFailure:
                v.reason = RejectReason::AssertFailure;
                return;
            case ExecStatus::RuntimeError:
            case ExecStatus::NoReturn:
                v.reason = RejectReason::RuntimeError;
                return;
            case ExecStatus::Ok:
                break;
        }
        if (!answer_match(outcome.value, problem.gold_value)) {
            v.reason = RejectReason::WrongAnswer;
            return;
        }
        if (!has_unit_constructs(program)) {
            v.reason = RejectReason::MissingUnitConstructs;
            return;
        }
        v.keep = true;
        v.predicted = outcome.value;
    });

    FilterResult result;
    std::set<std::string> satisfied;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const CandidateProgram& c = candidates[i];
        if (verdicts[i].keep) {
            if (satisfied.insert(c.problem_id).second) {
                result.kept.push_back({c.problem_id, c.program_text,
                                       by_id.at(c.problem_id)->gold_answer,
                                       verdicts[i].predicted});
            } else {
                result.rejected.emplace_back(c.problem_id, RejectReason::Superseded);
            }
        } else {
            result.rejected.emplace_back(c.problem_id, verdicts[i].reason);
        }
    }
    return result;
}

double percent_1dp(size_t n, size_t d) {
    if (d == 0) return 0.0;
    return std::round(static_cast<double>(n) / static_cast<double>(d) * 1000.0) / 10.0;
}

double StatsSummary::annotated_percent() const { return percent_1dp(annotated, total_problems); }
double StatsSummary::single_percent() const {
    return percent_1dp(single_labels, single_labels + multiple_labels);
}
double StatsSummary::multiple_percent() const {
    return percent_1dp(multiple_labels, single_labels + multiple_labels);
}

StatsSummary corpus_stats(const std::vector<ProblemRecord>& problems,
                          const std::vector<AnnotatedExample>& kept,
                          const std::vector<UnitClassLabel>& labels) {
    StatsSummary s;
    s.total_problems = problems.size();
    std::set<std::string> kept_ids;
    for (const AnnotatedExample& e : kept) kept_ids.insert(e.problem_id);
    s.annotated = kept_ids.size();
    for (const UnitClassLabel& l : labels)
        (l.unit_class == UnitClass::Single ? s.single_labels : s.multiple_labels) += 1;
    return s;
}

std::vector<ProblemRecord> load_problems(const std::string& path) {
    std::vector<ProblemRecord> out;
    std::set<std::string> ids;
    for_each_jsonl(path, [&](const json& j, const std::string& ctx) {
        ProblemRecord p;
        p.id = string_field(j, "id", ctx);
        if (!ids.insert(p.id).second) throw CorpusError(ctx + ": duplicate problem id `" + p.id + "`");
        p.question = j.contains("question") ? string_field(j, "question", ctx) : "";
        auto [text, value] = decimal_field(j, "answer", ctx);
        p.gold_answer = text;
        p.gold_value = value;
        out.push_back(std::move(p));
    });
    return out;
}

std::vector<CandidateProgram> load_candidates(const std::string& path,
                                              const std::vector<ProblemRecord>& problems) {
    std::set<std::string> ids;
    for (const ProblemRecord& p : problems) ids.insert(p.id);
    std::vector<CandidateProgram> out;
    for_each_jsonl(path, [&](const json& j, const std::string& ctx) {
        CandidateProgram c;
        c.problem_id = string_field(j, "problem_id", ctx);
        if (!ids.count(c.problem_id))
            throw CorpusError(ctx + ": unknown problem id `" + c.problem_id + "`");
        c.program_text = string_field(j, "program", ctx);
        out.push_back(std::move(c));
    });
    return out;
}

std::vector<UnitClassLabel> load_labels(const std::string& path) {
    std::vector<UnitClassLabel> out;
    std::set<std::string> ids;
    for_each_jsonl(path, [&](const json& j, const std::string& ctx) {
        UnitClassLabel l;
        l.problem_id = string_field(j, "problem_id", ctx);
        if (!ids.insert(l.problem_id).second)
            throw CorpusError(ctx + ": duplicate label for `" + l.problem_id + "`");
        std::string cls = string_field(j, "unit_class", ctx);
        if (cls == "single") {
            l.unit_class = UnitClass::Single;
        } else if (cls == "multiple") {
            l.unit_class = UnitClass::Multiple;
        } else {
            throw CorpusError(ctx + ": unit_class must be `single` or `multiple`");
        }
        out.push_back(std::move(l));
    });
    return out;
}

std::vector<AnnotatedExample> load_annotated(const std::string& path) {
    std::vector<AnnotatedExample> out;
    for_each_jsonl(path, [&](const json& j, const std::string& ctx) {
        AnnotatedExample e;
        e.problem_id = string_field(j, "problem_id", ctx);
        e.program_text = string_field(j, "program", ctx);
        auto [text, value] = decimal_field(j, "answer", ctx);
        e.gold_answer = text;
        e.predicted = value;
        out.push_back(std::move(e));
    });
    return out;
}

std::string annotated_to_jsonl(const std::vector<AnnotatedExample>& kept) {
    std::ostringstream os;
    for (const AnnotatedExample& e : kept) {
        json j;
        j["problem_id"] = e.problem_id;
        j["program"] = e.program_text;
        j["answer"] = json::parse(e.gold_answer, nullptr, false).is_discarded()
                          ? json(e.gold_answer)
                          : json::parse(e.gold_answer);
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace ucp

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ucp/analysis.hpp"
#include "ucp/checker.hpp"
#include "ucp/corpus.hpp"
#include "ucp/interpreter.hpp"
#include "ucp/parser.hpp"
#include "ucp/printer.hpp"

namespace ucp::cli {

namespace {

using nlohmann::json;

std::string read_program_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// Outputs land in a temp file first and are renamed into place.
void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
    }
    fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content, std::ostream& out) {
    if (out_path.empty()) {
        out << content;
    } else {
        write_atomic(out_path, content);
    }
}

json span_to_json(const SourceSpan& s) {
    return json{{"line_start", s.line_start},
                {"col_start", s.col_start},
                {"line_end", s.line_end},
                {"col_end", s.col_end}};
}

// Integral results print without a fractional part.
json number_to_json(double v) {
    if (std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 9.0e15)
        return json(static_cast<std::int64_t>(v));
    return json(v);
}

const char* severity_text(Severity s) { return s == Severity::Error ? "error" : "warning"; }

int cmd_run(const std::string& program_path, std::istream& in, std::ostream& out) {
    std::string source = read_program_input(program_path, in);
    json j;
    int exit_code = kExitOk;
    try {
        Program program = parse_program(source);
        ExecutionOutcome outcome = execute(program, ExecMode::Full);
        j["status"] = to_string(outcome.status);
        switch (outcome.status) {
            case ExecStatus::Ok:
                j["value"] = number_to_json(outcome.value);
                break;
            case ExecStatus::AssertFailure:
                j["failed_span"] = span_to_json(outcome.failed_span);
                j["message"] = outcome.message;
                exit_code = kExitFindings;
                break;
            case ExecStatus::RuntimeError:
                j["failed_span"] = span_to_json(outcome.failed_span);
                j["message"] = outcome.message;
                exit_code = kExitError;
                break;
            case ExecStatus::NoReturn:
                j["message"] = outcome.message;
                exit_code = kExitError;
                break;
        }
    } catch (const ParseError& e) {
        j["status"] = "parse_error";
        j["failed_span"] = span_to_json(e.span());
        j["message"] = e.message();
        exit_code = kExitError;
    }
    out << j.dump() << "\n";
    return exit_code;
}

int cmd_check(const std::string& program_path, const std::string& format, std::istream& in,
              std::ostream& out, bool color) {
    std::string source = read_program_input(program_path, in);
    Program program;
    try {
        program = parse_program(source);
    } catch (const ParseError& e) {
        if (format == "json") {
            json j{{"status", "parse_error"},
                   {"failed_span", span_to_json(e.span())},
                   {"message", e.message()}};
            out << j.dump() << "\n";
        } else {
            out << "parse error at line " << e.span().line_start << ": " << e.message() << "\n";
        }
        return kExitError;
    }

    InferenceResult inference = infer_units(program);
    std::vector<Diagnostic> diags = lint_asserts(program);
    diags.insert(diags.end(), inference.diagnostics.begin(), inference.diagnostics.end());

    bool mismatch = false;
    for (const UnitJudgment& j : inference.judgments)
        mismatch |= j.agreement == Agreement::Mismatch;
    bool errors = mismatch;
    for (const Diagnostic& d : diags) errors |= d.severity == Severity::Error;

    if (format == "json") {
        json jd = json::array();
        for (const Diagnostic& d : diags)
            jd.push_back({{"span", span_to_json(d.span)},
                          {"severity", severity_text(d.severity)},
                          {"code", d.code},
                          {"message", d.message}});
        json jj = json::array();
        for (const UnitJudgment& j : inference.judgments) {
            json one{{"variable", j.variable},
                     {"line", j.span.line_start},
                     {"agreement", to_string(j.agreement)}};
            if (j.inferred) one["inferred"] = j.inferred->to_string();
            if (j.declared) one["declared"] = j.declared->to_string();
            jj.push_back(one);
        }
        json root{{"diagnostics", jd}, {"judgments", jj}};
        out << root.dump(2) << "\n";
    } else {
        const char* red = color ? "\x1b[31m" : "";
        const char* yellow = color ? "\x1b[33m" : "";
        const char* reset = color ? "\x1b[0m" : "";
        for (const UnitJudgment& j : inference.judgments) {
            if (j.agreement != Agreement::Mismatch) continue;
            out << "line " << j.span.line_start << ": " << red << "unit mismatch" << reset
                << " for `" << j.variable << "`: inferred " << j.inferred->to_string()
                << ", declared " << j.declared->to_string() << "\n";
        }
        for (const Diagnostic& d : diags) {
            out << "line " << d.span.line_start << ": "
                << (d.severity == Severity::Error ? red : yellow) << severity_text(d.severity)
                << reset << " [" << d.code << "] " << d.message << "\n";
        }
        if (!errors && diags.empty()) out << "clean: no findings\n";
    }
    if (errors) return kExitError;
    return diags.empty() ? kExitOk : kExitFindings;
}

int cmd_strip(const std::string& program_path, const std::string& out_path, std::istream& in,
              std::ostream& out, std::ostream& err) {
    std::string source = read_program_input(program_path, in);
    try {
        Program stripped = strip(parse_program(source));
        emit(out_path, print_program(stripped), out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_synthesize(const std::string& program_path, const std::string& out_path, std::istream& in,
                   std::ostream& out, std::ostream& err) {
    std::string source = read_program_input(program_path, in);
    try {
        SynthesisResult result = synthesize_asserts(parse_program(source));
        emit(out_path, print_program(result.program), out);
        for (const Diagnostic& d : result.diagnostics)
            err << "line " << d.span.line_start << ": " << severity_text(d.severity) << " ["
                << d.code << "] " << d.message << "\n";
        return result.diagnostics.empty() ? kExitOk : kExitFindings;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_annotate(const std::string& problems_path, const std::string& candidates_path,
                 const std::string& out_path, const std::string& rejects_path,
                 const std::string& format, unsigned parallelism, std::ostream& out) {
    auto problems = load_problems(problems_path);
    auto candidates = load_candidates(candidates_path, problems);
    FilterResult result = annotate_filter(problems, candidates, parallelism);

    if (!out_path.empty()) write_atomic(out_path, annotated_to_jsonl(result.kept));
    if (!rejects_path.empty()) {
        std::ostringstream os;
        for (const auto& [id, reason] : result.rejected)
            os << json{{"problem_id", id}, {"reason", to_string(reason)}}.dump() << "\n";
        write_atomic(rejects_path, os.str());
    }

    std::map<std::string, size_t> reasons;
    for (const auto& [id, reason] : result.rejected) reasons[to_string(reason)] += 1;
    if (format == "json") {
        json j{{"total", candidates.size()}, {"kept", result.kept.size()}, {"rejected", reasons}};
        out << j.dump() << "\n";
    } else {
        out << "kept " << result.kept.size() << " of " << candidates.size() << " candidate(s)\n";
        for (const auto& [reason, count] : reasons)
            out << "  rejected " << reason << ": " << count << "\n";
    }
    return kExitOk;
}

int cmd_analyze(const std::string& problems_path, const std::string& candidates_path,
                const std::string& labels_path, const std::string& out_path,
                const std::string& format, const std::string& emit_kind, unsigned parallelism,
                std::ostream& out) {
    auto problems = load_problems(problems_path);
    auto candidates = load_candidates(candidates_path, problems);
    std::vector<UnitClassLabel> labels;
    if (!labels_path.empty()) labels = load_labels(labels_path);

    AnalysisReport report = analyze_corpus(problems, candidates, labels, parallelism);
    std::string content;
    if (emit_kind == "csv") {
        content = buckets_to_csv(report);
    } else if (format == "text") {
        content = report_to_text(report);
    } else {
        content = report_to_json(report);
    }
    emit(out_path, content, out);
    return kExitOk;
}

int cmd_stats(const std::string& problems_path, const std::string& annotated_path,
              const std::string& labels_path, const std::string& format, std::ostream& out) {
    auto problems = load_problems(problems_path);
    std::vector<AnnotatedExample> kept;
    if (!annotated_path.empty()) kept = load_annotated(annotated_path);
    std::vector<UnitClassLabel> labels;
    if (!labels_path.empty()) labels = load_labels(labels_path);

    StatsSummary s = corpus_stats(problems, kept, labels);
    if (format == "text") {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "problems: %zu\nannotated: %zu (%.1f%%)\nsingle: %zu (%.1f%%)\n"
                      "multiple: %zu (%.1f%%)\n",
                      s.total_problems, s.annotated, s.annotated_percent(), s.single_labels,
                      s.single_percent(), s.multiple_labels, s.multiple_percent());
        out << buf;
    } else {
        json j{{"problems", s.total_problems},
               {"annotated", s.annotated},
               {"annotated_percent", s.annotated_percent()},
               {"single", s.single_labels},
               {"single_percent", s.single_percent()},
               {"multiple", s.multiple_labels},
               {"multiple_percent", s.multiple_percent()}};
        out << j.dump() << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, bool color) {
    CLI::App app{"Unit-consistency program toolkit"};
    app.require_subcommand(1);

    std::string program_path, out_path, rejects_path;
    std::string problems_path, candidates_path, labels_path, annotated_path;
    std::string format = "text";
    std::string emit_kind;
    unsigned parallelism = 1;

    auto add_program = [&](CLI::App* cmd) {
        cmd->add_option("--program", program_path, "program file, or - for stdin")->required();
    };

    CLI::App* run = app.add_subcommand("run", "execute a program and print the outcome as JSON");
    add_program(run);

    CLI::App* check = app.add_subcommand("check", "infer units and lint assert statements");
    add_program(check);
    check->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    CLI::App* strip_cmd = app.add_subcommand("strip", "remove unit declarations and asserts");
    add_program(strip_cmd);
    strip_cmd->add_option("--out", out_path, "write here instead of stdout");

    CLI::App* synth = app.add_subcommand("synthesize", "insert canonical asserts");
    add_program(synth);
    synth->add_option("--out", out_path, "write here instead of stdout");

    CLI::App* annotate = app.add_subcommand("annotate", "filter candidates against gold answers");
    annotate->add_option("--problems", problems_path)->required();
    annotate->add_option("--candidates", candidates_path)->required();
    annotate->add_option("--out", out_path, "kept examples, as JSONL")->required();
    annotate->add_option("--rejects", rejects_path, "rejected ids with reasons, as JSONL");
    annotate->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    annotate->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);

    CLI::App* analyze = app.add_subcommand("analyze", "categorize outcomes and aggregate");
    analyze->add_option("--problems", problems_path)->required();
    analyze->add_option("--candidates", candidates_path)->required();
    analyze->add_option("--labels", labels_path);
    analyze->add_option("--out", out_path, "write here instead of stdout");
    analyze->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--emit", emit_kind)->check(CLI::IsMember({"csv"}));
    analyze->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);

    CLI::App* stats = app.add_subcommand("stats", "corpus counts and percentages");
    stats->add_option("--problems", problems_path)->required();
    stats->add_option("--annotated", annotated_path, "kept examples from annotate");
    stats->add_option("--labels", labels_path);
    stats->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    // analyze defaults to JSON; the single-program commands default to text.
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(program_path, in, out);
        if (check->parsed()) return cmd_check(program_path, format, in, out, color);
        if (strip_cmd->parsed()) return cmd_strip(program_path, out_path, in, out, err);
        if (synth->parsed()) return cmd_synthesize(program_path, out_path, in, out, err);
        if (annotate->parsed())
            return cmd_annotate(problems_path, candidates_path, out_path, rejects_path, format,
                                parallelism, out);
        if (analyze->parsed()) {
            if (!analyze->count("--format") && emit_kind.empty()) format = "json";
            return cmd_analyze(problems_path, candidates_path, labels_path, out_path, format,
                               emit_kind, parallelism, out);
        }
        if (stats->parsed()) {
            if (!stats->count("--format")) format = "json";
            return cmd_stats(problems_path, annotated_path, labels_path, format, out);
        }
    } catch (const CorpusError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}

}  // namespace ucp::cli

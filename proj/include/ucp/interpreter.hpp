#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ucp/ast.hpp"

namespace ucp {

// A binding is either a number or a unit vector.
using Value = std::variant<double, UnitVector>;

struct Environment {
    std::map<std::string, Value> bindings;
};

enum class ExecMode {
    Full,      // unit declarations bound, asserts checked
    Stripped,  // asserts and unit declarations skipped
};

enum class ExecStatus { Ok, AssertFailure, RuntimeError, NoReturn };

enum class RuntimeErrorKind {
    UndefinedVariable,
    DivisionByZero,
    TypeMismatch,       // e.g. Number + UnitVector
    UnitOperatorMisuse, // * or / applied to unit vectors
};

const char* to_string(ExecStatus status);
const char* to_string(RuntimeErrorKind kind);

struct TraceEntry {
    SourceSpan span;
    std::string name;
    Value value;
};

struct ExecutionOutcome {
    ExecStatus status = ExecStatus::NoReturn;
    double value = 0;                          // valid when status == Ok
    SourceSpan failed_span{};                  // AssertFailure / RuntimeError
    RuntimeErrorKind error_kind{};             // RuntimeError
    std::string lhs_rendered;                  // AssertFailure: first unequal pair
    std::string rhs_rendered;
    std::string message;                       // human-readable failure text
    std::vector<TraceEntry> trace;             // every binding, in order
};

/// Thrown by evaluate_unit_expr; execute() converts it into an outcome.
struct EvalError {
    SourceSpan span;
    RuntimeErrorKind kind;
    std::string message;
};

/// Run a program front to back. Execution halts at the first failing assert
/// or runtime error; statements after the failure never run.
ExecutionOutcome execute(const Program& program, ExecMode mode);

/// Remove every assert and unit declaration, keeping all other statements in
/// order. The result's source text is its own rendering.
Program strip(const Program& program);

/// Evaluate a unit expression: + is combine, - is difference.
/// Throws EvalError on undefined variables or numeric bindings.
UnitVector evaluate_unit_expr(const UnitExpr& expr, const Environment& env);

}  // namespace ucp

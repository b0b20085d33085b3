#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ucp/ast.hpp"

namespace ucp {

enum class Agreement {
    Match,       // inferred and declared unit agree
    Mismatch,    // both present, unequal
    Undeclared,  // unit inferred but never declared
    Unknowable,  // nothing to check: literal-defined or depends on unknowns
};

const char* to_string(Agreement agreement);

struct UnitJudgment {
    std::string variable;
    SourceSpan span;                    // the assignment the judgment is about
    std::optional<UnitVector> inferred; // absent when Unknowable
    std::optional<UnitVector> declared;
    Agreement agreement = Agreement::Unknowable;
};

enum class Severity { Error, Warning };

// Stable codes:
//   UCP001 arithmetic assignment with no following assert
//   UCP002 assert does not match the canonical form for the operation
//   UCP003 unit declaration with no base variable
//   UCP004 variable used in arithmetic with no unit declaration
//   UCP005 dimensionally vacuous assert (all operands dimensionless)
//   UCP101 operands of + or - carry different units
//   UCP201 synthesis skipped: compound right-hand side
//   UCP202 synthesis skipped: missing unit declaration
struct Diagnostic {
    SourceSpan span;
    Severity severity = Severity::Warning;
    std::string code;
    std::string message;
};

struct InferenceResult {
    std::vector<UnitJudgment> judgments;   // one per assignment, in order
    std::vector<Diagnostic> diagnostics;
};

/// Forward pass over assignments. Multiplication combines operand units,
/// division takes their difference, addition and subtraction require the
/// common operand unit. Literal operands are dimensionless scalars; an
/// assignment whose right-hand side is all literals is defined by its
/// declaration rather than checked against it.
InferenceResult infer_units(const Program& program);

struct SynthesisResult {
    Program program;
    std::vector<Diagnostic> diagnostics;   // skipped statements
};

/// Insert the canonical assert after each single-operation assignment:
///   x = a * b  ->  assert x_unit == a_unit + b_unit
///   x = a / b  ->  assert x_unit == a_unit - b_unit
///   x = a + b  ->  assert x_unit == a_unit == b_unit   (same for -)
/// Literal operands contribute no term. Statements that already have an
/// assert are left untouched; compound expressions and undeclared operands
/// are skipped with a diagnostic.
SynthesisResult synthesize_asserts(const Program& program);

/// Style and completeness warnings; see the code list above.
std::vector<Diagnostic> lint_asserts(const Program& program);

}  // namespace ucp

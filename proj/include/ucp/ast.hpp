#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ucp/source_span.hpp"
#include "ucp/unit_vector.hpp"

namespace ucp {

// Expression trees are immutable once built; statements share them freely,
// so copying a Program is cheap and thread-safe.

struct NumExpr;
using NumExprPtr = std::shared_ptr<const NumExpr>;

struct NumberLiteral {
    std::string lexeme;  // exact decimal as written; kept for lossless printing
    double value = 0;
};

struct VarRef {
    std::string name;
};

enum class NumOp { Add, Sub, Mul, Div };

struct NumBinOp {
    NumOp op;
    NumExprPtr lhs;
    NumExprPtr rhs;
};

struct Negate {
    NumExprPtr operand;
};

struct NumExpr {
    SourceSpan span;
    std::variant<NumberLiteral, VarRef, NumBinOp, Negate> node;
};

struct UnitExpr;
using UnitExprPtr = std::shared_ptr<const UnitExpr>;

struct UnitLiteral {
    UnitVector value;
};

struct UnitVarRef {
    std::string name;
};

// Only + (combine) and - (difference) exist at unit type.
enum class UnitOp { Combine, Difference };

struct UnitBinOp {
    UnitOp op;
    UnitExprPtr lhs;
    UnitExprPtr rhs;
};

struct UnitExpr {
    SourceSpan span;
    std::variant<UnitLiteral, UnitVarRef, UnitBinOp> node;
};

struct AssignStmt {
    std::string target;
    NumExprPtr expr;
};

struct UnitAssignStmt {
    std::string target;  // always ends in "_unit"
    UnitExprPtr expr;
};

// Chained equality `a == b == c` carries three operands.
struct AssertStmt {
    std::vector<UnitExprPtr> operands;  // >= 2
};

struct ReturnStmt {
    NumExprPtr expr;
};

struct Statement {
    SourceSpan span;
    std::variant<AssignStmt, UnitAssignStmt, AssertStmt, ReturnStmt> node;
};

struct Program {
    std::string name;
    std::optional<std::string> docstring;
    std::vector<Statement> statements;
    std::string source;  // original text the program was parsed from
};

inline bool is_unit_name(std::string_view name) {
    return name.size() > 5 && name.substr(name.size() - 5) == "_unit";
}

// Base variable for a "_unit" name ("quarters_unit" -> "quarters").
inline std::string unit_base_name(std::string_view unit_name) {
    return std::string(unit_name.substr(0, unit_name.size() - 5));
}

NumExprPtr num_literal(std::string lexeme, SourceSpan span = {});
NumExprPtr num_var(std::string name, SourceSpan span = {});
NumExprPtr num_binop(NumOp op, NumExprPtr lhs, NumExprPtr rhs, SourceSpan span = {});
NumExprPtr num_negate(NumExprPtr operand, SourceSpan span = {});
UnitExprPtr unit_literal(UnitVector value, SourceSpan span = {});
UnitExprPtr unit_var(std::string name, SourceSpan span = {});
UnitExprPtr unit_binop(UnitOp op, UnitExprPtr lhs, UnitExprPtr rhs, SourceSpan span = {});

// Structural equality, ignoring spans and source text. Number literals
// compare by lexeme so 4 and 4.0 stay distinct.
bool equal(const NumExpr& a, const NumExpr& b);
bool equal(const UnitExpr& a, const UnitExpr& b);
bool equal(const Statement& a, const Statement& b);
bool equal(const Program& a, const Program& b);

}  // namespace ucp

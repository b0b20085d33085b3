#include "ucp/ast.hpp"

#include <charconv>
#include <cstdlib>

namespace ucp {

NumExprPtr num_literal(std::string lexeme, SourceSpan span) {
    double value = std::strtod(lexeme.c_str(), nullptr);
    return std::make_shared<const NumExpr>(NumExpr{span, NumberLiteral{std::move(lexeme), value}});
}

NumExprPtr num_var(std::string name, SourceSpan span) {
    return std::make_shared<const NumExpr>(NumExpr{span, VarRef{std::move(name)}});
}

NumExprPtr num_binop(NumOp op, NumExprPtr lhs, NumExprPtr rhs, SourceSpan span) {
    return std::make_shared<const NumExpr>(NumExpr{span, NumBinOp{op, std::move(lhs), std::move(rhs)}});
}

NumExprPtr num_negate(NumExprPtr operand, SourceSpan span) {
    return std::make_shared<const NumExpr>(NumExpr{span, Negate{std::move(operand)}});
}

UnitExprPtr unit_literal(UnitVector value, SourceSpan span) {
    return std::make_shared<const UnitExpr>(UnitExpr{span, UnitLiteral{std::move(value)}});
}

UnitExprPtr unit_var(std::string name, SourceSpan span) {
    return std::make_shared<const UnitExpr>(UnitExpr{span, UnitVarRef{std::move(name)}});
}

UnitExprPtr unit_binop(UnitOp op, UnitExprPtr lhs, UnitExprPtr rhs, SourceSpan span) {
    return std::make_shared<const UnitExpr>(UnitExpr{span, UnitBinOp{op, std::move(lhs), std::move(rhs)}});
}

bool equal(const NumExpr& a, const NumExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& an) {
            using T = std::decay_t<decltype(an)>;
            const auto& bn = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, NumberLiteral>) {
                return an.lexeme == bn.lexeme;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return an.name == bn.name;
            } else if constexpr (std::is_same_v<T, NumBinOp>) {
                return an.op == bn.op && equal(*an.lhs, *bn.lhs) && equal(*an.rhs, *bn.rhs);
            } else {
                return equal(*an.operand, *bn.operand);
            }
        },
        a.node);
}

bool equal(const UnitExpr& a, const UnitExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& an) {
            using T = std::decay_t<decltype(an)>;
            const auto& bn = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, UnitLiteral>) {
                return an.value == bn.value;
            } else if constexpr (std::is_same_v<T, UnitVarRef>) {
                return an.name == bn.name;
            } else {
                return an.op == bn.op && equal(*an.lhs, *bn.lhs) && equal(*an.rhs, *bn.rhs);
            }
        },
        a.node);
}

bool equal(const Statement& a, const Statement& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& an) {
            using T = std::decay_t<decltype(an)>;
            const auto& bn = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, AssignStmt>) {
                return an.target == bn.target && equal(*an.expr, *bn.expr);
            } else if constexpr (std::is_same_v<T, UnitAssignStmt>) {
                return an.target == bn.target && equal(*an.expr, *bn.expr);
            } else if constexpr (std::is_same_v<T, AssertStmt>) {
                if (an.operands.size() != bn.operands.size()) return false;
                for (size_t i = 0; i < an.operands.size(); ++i)
                    if (!equal(*an.operands[i], *bn.operands[i])) return false;
                return true;
            } else {
                return equal(*an.expr, *bn.expr);
            }
        },
        a.node);
}

bool equal(const Program& a, const Program& b) {
    if (a.name != b.name || a.docstring != b.docstring) return false;
    if (a.statements.size() != b.statements.size()) return false;
    for (size_t i = 0; i < a.statements.size(); ++i)
        if (!equal(a.statements[i], b.statements[i])) return false;
    return true;
}

}  // namespace ucp

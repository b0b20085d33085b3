#include "ucp/printer.hpp"

#include <sstream>

namespace ucp {
namespace {

// Precedence levels: additive 1, multiplicative 2, unary 3, primary 4.
int num_level(const NumExpr& e) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumBinOp>)
                return (n.op == NumOp::Add || n.op == NumOp::Sub) ? 1 : 2;
            else if constexpr (std::is_same_v<T, Negate>)
                return 3;
            else
                return 4;
        },
        e.node);
}

const char* num_op_text(NumOp op) {
    switch (op) {
        case NumOp::Add: return " + ";
        case NumOp::Sub: return " - ";
        case NumOp::Mul: return " * ";
        case NumOp::Div: return " / ";
    }
    return "";
}

void print_num(std::ostream& os, const NumExpr& e, int min_level) {
    bool parens = num_level(e) < min_level;
    if (parens) os << '(';
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLiteral>) {
                os << n.lexeme;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                os << n.name;
            } else if constexpr (std::is_same_v<T, NumBinOp>) {
                int lvl = num_level(e);
                print_num(os, *n.lhs, lvl);
                os << num_op_text(n.op);
                print_num(os, *n.rhs, lvl + 1);
            } else {
                os << '-';
                print_num(os, *n.operand, 3);
            }
        },
        e.node);
    if (parens) os << ')';
}

void print_unit(std::ostream& os, const UnitExpr& e, bool need_parens) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, UnitLiteral>) {
                os << n.value.to_string();
            } else if constexpr (std::is_same_v<T, UnitVarRef>) {
                os << n.name;
            } else {
                if (need_parens) os << '(';
                print_unit(os, *n.lhs, false);
                os << (n.op == UnitOp::Combine ? " + " : " - ");
                print_unit(os, *n.rhs, true);  // right operand of - must keep grouping
                if (need_parens) os << ')';
            }
        },
        e.node);
}

}  // namespace

std::string print_num_expr(const NumExpr& expr) {
    std::ostringstream os;
    print_num(os, expr, 0);
    return os.str();
}

std::string print_unit_expr(const UnitExpr& expr) {
    std::ostringstream os;
    print_unit(os, expr, false);
    return os.str();
}

std::string print_statement(const Statement& stmt) {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
                os << s.target << " = " << print_num_expr(*s.expr);
            } else if constexpr (std::is_same_v<T, UnitAssignStmt>) {
                os << s.target << " = " << print_unit_expr(*s.expr);
            } else if constexpr (std::is_same_v<T, AssertStmt>) {
                os << "assert ";
                for (size_t i = 0; i < s.operands.size(); ++i) {
                    if (i) os << " == ";
                    os << print_unit_expr(*s.operands[i]);
                }
            } else {
                os << "return " << print_num_expr(*s.expr);
            }
        },
        stmt.node);
    return os.str();
}

std::string print_program(const Program& program) {
    std::ostringstream os;
    os << "def " << program.name << "():\n";
    if (program.docstring) os << "    \"\"\"" << *program.docstring << "\"\"\"\n";
    for (const Statement& stmt : program.statements)
        os << "    " << print_statement(stmt) << "\n";
    return os.str();
}

}  // namespace ucp

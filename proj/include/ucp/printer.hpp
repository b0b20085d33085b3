#pragma once

#include <string>

#include "ucp/ast.hpp"

namespace ucp {

/// Deterministic rendering: one statement per line, four-space indent,
/// minimal parentheses, Counter literals with sorted symbols. Printing then
/// reparsing yields a structurally identical AST.
std::string print_program(const Program& program);

std::string print_statement(const Statement& stmt);
std::string print_num_expr(const NumExpr& expr);
std::string print_unit_expr(const UnitExpr& expr);

}  // namespace ucp

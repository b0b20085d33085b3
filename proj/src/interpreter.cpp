#include "ucp/interpreter.hpp"

#include "ucp/printer.hpp"

namespace ucp {

namespace {

constexpr size_t kTraceCap = 10000;

double evaluate_num_expr(const NumExpr& expr, const Environment& env) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLiteral>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                auto it = env.bindings.find(n.name);
                if (it == env.bindings.end())
                    throw EvalError{expr.span, RuntimeErrorKind::UndefinedVariable,
                                    "undefined variable `" + n.name + "`"};
                if (!std::holds_alternative<double>(it->second))
                    throw EvalError{expr.span, RuntimeErrorKind::TypeMismatch,
                                    "`" + n.name + "` is a unit, not a number"};
                return std::get<double>(it->second);
            } else if constexpr (std::is_same_v<T, NumBinOp>) {
                // Guards below only trip on hand-built ASTs; the parser keeps
                // unit variables out of numeric expressions.
                auto operand = [&](const NumExpr& e) -> double {
                    if (const auto* ref = std::get_if<VarRef>(&e.node)) {
                        auto it = env.bindings.find(ref->name);
                        if (it != env.bindings.end() &&
                            std::holds_alternative<UnitVector>(it->second)) {
                            bool multiplicative = n.op == NumOp::Mul || n.op == NumOp::Div;
                            throw EvalError{e.span,
                                            multiplicative ? RuntimeErrorKind::UnitOperatorMisuse
                                                           : RuntimeErrorKind::TypeMismatch,
                                            multiplicative
                                                ? "`*` and `/` cannot be applied to units"
                                                : "cannot mix numbers and units"};
                        }
                    }
                    return evaluate_num_expr(e, env);
                };
                double lhs = operand(*n.lhs);
                double rhs = operand(*n.rhs);
                switch (n.op) {
                    case NumOp::Add: return lhs + rhs;
                    case NumOp::Sub: return lhs - rhs;
                    case NumOp::Mul: return lhs * rhs;
                    case NumOp::Div:
                        if (rhs == 0.0)
                            throw EvalError{expr.span, RuntimeErrorKind::DivisionByZero,
                                            "division by zero"};
                        return lhs / rhs;
                }
                return 0;
            } else {
                return -evaluate_num_expr(*n.operand, env);
            }
        },
        expr.node);
}

}  // namespace

const char* to_string(ExecStatus status) {
    switch (status) {
        case ExecStatus::Ok: return "ok";
        case ExecStatus::AssertFailure: return "assert_failure";
        case ExecStatus::RuntimeError: return "runtime_error";
        case ExecStatus::NoReturn: return "no_return";
    }
    return "";
}

const char* to_string(RuntimeErrorKind kind) {
    switch (kind) {
        case RuntimeErrorKind::UndefinedVariable: return "undefined_variable";
        case RuntimeErrorKind::DivisionByZero: return "division_by_zero";
        case RuntimeErrorKind::TypeMismatch: return "type_mismatch";
        case RuntimeErrorKind::UnitOperatorMisuse: return "unit_operator_misuse";
    }
    return "";
}

UnitVector evaluate_unit_expr(const UnitExpr& expr, const Environment& env) {
    return std::visit(
        [&](const auto& n) -> UnitVector {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, UnitLiteral>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, UnitVarRef>) {
                auto it = env.bindings.find(n.name);
                if (it == env.bindings.end())
                    throw EvalError{expr.span, RuntimeErrorKind::UndefinedVariable,
                                    "undefined variable `" + n.name + "`"};
                if (!std::holds_alternative<UnitVector>(it->second))
                    throw EvalError{expr.span, RuntimeErrorKind::TypeMismatch,
                                    "`" + n.name + "` is a number, not a unit"};
                return std::get<UnitVector>(it->second);
            } else {
                UnitVector lhs = evaluate_unit_expr(*n.lhs, env);
                UnitVector rhs = evaluate_unit_expr(*n.rhs, env);
                return n.op == UnitOp::Combine ? lhs.combine(rhs) : lhs.difference(rhs);
            }
        },
        expr.node);
}

ExecutionOutcome execute(const Program& program, ExecMode mode) {
    ExecutionOutcome out;
    Environment env;
    auto record = [&](const SourceSpan& span, const std::string& name, Value value) {
        if (out.trace.size() < kTraceCap) out.trace.push_back({span, name, std::move(value)});
    };

    for (const Statement& stmt : program.statements) {
        try {
            bool done = std::visit(
                [&](const auto& s) -> bool {
                    using T = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<T, AssignStmt>) {
                        double v = evaluate_num_expr(*s.expr, env);
                        env.bindings[s.target] = v;
                        record(stmt.span, s.target, v);
                    } else if constexpr (std::is_same_v<T, UnitAssignStmt>) {
                        if (mode == ExecMode::Full) {
                            UnitVector v = evaluate_unit_expr(*s.expr, env);
                            env.bindings[s.target] = v;
                            record(stmt.span, s.target, std::move(v));
                        }
                    } else if constexpr (std::is_same_v<T, AssertStmt>) {
                        if (mode == ExecMode::Full) {
                            std::vector<UnitVector> values;
                            values.reserve(s.operands.size());
                            for (const UnitExprPtr& op : s.operands)
                                values.push_back(evaluate_unit_expr(*op, env));
                            for (size_t i = 0; i + 1 < values.size(); ++i) {
                                if (!(values[i] == values[i + 1])) {
                                    out.status = ExecStatus::AssertFailure;
                                    out.failed_span = stmt.span;
                                    out.lhs_rendered = values[i].to_string();
                                    out.rhs_rendered = values[i + 1].to_string();
                                    out.message = "unit assertion failed: " + out.lhs_rendered +
                                                  " != " + out.rhs_rendered;
                                    return true;
                                }
                            }
                        }
                    } else {
                        out.status = ExecStatus::Ok;
                        out.value = evaluate_num_expr(*s.expr, env);
                        return true;
                    }
                    return false;
                },
                stmt.node);
            if (done) return out;
        } catch (const EvalError& e) {
            out.status = ExecStatus::RuntimeError;
            out.failed_span = e.span;
            out.error_kind = e.kind;
            out.message = e.message;
            return out;
        }
    }
    out.status = ExecStatus::NoReturn;
    out.message = "program ended without return";
    return out;
}

Program strip(const Program& program) {
    Program out;
    out.name = program.name;
    out.docstring = program.docstring;
    for (const Statement& stmt : program.statements) {
        if (std::holds_alternative<AssertStmt>(stmt.node)) continue;
        if (std::holds_alternative<UnitAssignStmt>(stmt.node)) continue;
        out.statements.push_back(stmt);
    }
    out.source = print_program(out);
    return out;
}

}  // namespace ucp

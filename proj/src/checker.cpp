#include "ucp/checker.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ucp/printer.hpp"

namespace ucp {

namespace {

// Inference lattice. PureLiteral marks right-hand sides built only from
// number literals: they act as dimensionless scalars under * and /, adopt
// the other operand's unit under + and -, and when an assignment is all
// literals its declaration defines the unit instead of being checked.
struct Inferred {
    enum Kind { PureLiteral, Known, Unknown } kind = Unknown;
    UnitVector unit;  // valid when kind == Known

    static Inferred literal() { return {PureLiteral, {}}; }
    static Inferred known(UnitVector u) { return {Known, std::move(u)}; }
    static Inferred unknown() { return {Unknown, {}}; }
};

struct DeclSite {
    size_t index;                       // statement index of the UnitAssign
    std::optional<UnitVector> value;    // static value, if computable
    SourceSpan span;
};

// Declarations per base variable, in statement order, with their statically
// evaluated values. A declaration like `x_unit = a_unit + Counter(...)` is
// resolvable when the referenced declarations are.
std::map<std::string, std::vector<DeclSite>> collect_declarations(const Program& program) {
    std::map<std::string, std::vector<DeclSite>> decls;
    std::map<std::string, std::optional<UnitVector>> env;  // unit name -> latest static value

    auto static_eval = [&](const UnitExpr& e, auto&& self) -> std::optional<UnitVector> {
        if (const auto* lit = std::get_if<UnitLiteral>(&e.node)) return lit->value;
        if (const auto* ref = std::get_if<UnitVarRef>(&e.node)) {
            auto it = env.find(ref->name);
            return it == env.end() ? std::nullopt : it->second;
        }
        const auto& bin = std::get<UnitBinOp>(e.node);
        auto lhs = self(*bin.lhs, self);
        auto rhs = self(*bin.rhs, self);
        if (!lhs || !rhs) return std::nullopt;
        return bin.op == UnitOp::Combine ? lhs->combine(*rhs) : lhs->difference(*rhs);
    };

    for (size_t i = 0; i < program.statements.size(); ++i) {
        const auto* ua = std::get_if<UnitAssignStmt>(&program.statements[i].node);
        if (!ua) continue;
        std::optional<UnitVector> value = static_eval(*ua->expr, static_eval);
        env[ua->target] = value;
        decls[unit_base_name(ua->target)].push_back({i, value, program.statements[i].span});
    }
    return decls;
}

// The declaration that governs variable `var` around statement `index`.
// Declarations normally follow the assignment they describe, so prefer the
// nearest one after; fall back to the nearest one before.
const DeclSite* governing_decl(const std::map<std::string, std::vector<DeclSite>>& decls,
                               const std::string& var, size_t index, bool prefer_after) {
    auto it = decls.find(var);
    if (it == decls.end()) return nullptr;
    const auto& sites = it->second;
    const DeclSite* before = nullptr;
    const DeclSite* after = nullptr;
    for (const DeclSite& d : sites) {
        if (d.index < index && (!before || d.index > before->index)) before = &d;
        if (d.index > index && (!after || d.index < after->index)) after = &d;
    }
    if (prefer_after) return after ? after : before;
    return before ? before : after;
}

struct AtomicOperand {
    bool is_var = false;
    std::string name;  // variable name when is_var
};

// A single-operation right-hand side: one binary operator whose operands are
// literals or variable references (unary minus is transparent).
struct SingleOp {
    NumOp op;
    AtomicOperand lhs, rhs;
};

std::optional<AtomicOperand> atomic_operand(const NumExpr& e) {
    if (std::holds_alternative<NumberLiteral>(e.node)) return AtomicOperand{false, {}};
    if (const auto* ref = std::get_if<VarRef>(&e.node)) return AtomicOperand{true, ref->name};
    if (const auto* neg = std::get_if<Negate>(&e.node)) return atomic_operand(*neg->operand);
    return std::nullopt;
}

std::optional<SingleOp> single_op(const NumExpr& e) {
    const auto* bin = std::get_if<NumBinOp>(&e.node);
    if (!bin) return std::nullopt;
    auto lhs = atomic_operand(*bin->lhs);
    auto rhs = atomic_operand(*bin->rhs);
    if (!lhs || !rhs) return std::nullopt;
    return SingleOp{bin->op, *lhs, *rhs};
}

bool contains_var_arithmetic(const NumExpr& e) {
    if (const auto* bin = std::get_if<NumBinOp>(&e.node)) {
        auto has_var = [](const NumExpr& sub, auto&& self) -> bool {
            if (std::holds_alternative<VarRef>(sub.node)) return true;
            if (const auto* b = std::get_if<NumBinOp>(&sub.node))
                return self(*b->lhs, self) || self(*b->rhs, self);
            if (const auto* n = std::get_if<Negate>(&sub.node)) return self(*n->operand, self);
            return false;
        };
        return has_var(*bin->lhs, has_var) || has_var(*bin->rhs, has_var);
    }
    if (const auto* neg = std::get_if<Negate>(&e.node)) return contains_var_arithmetic(*neg->operand);
    return false;
}

void collect_vars_in_binops(const NumExpr& e, bool inside_binop, std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarRef>) {
                if (inside_binop) out.insert(n.name);
            } else if constexpr (std::is_same_v<T, NumBinOp>) {
                collect_vars_in_binops(*n.lhs, true, out);
                collect_vars_in_binops(*n.rhs, true, out);
            } else if constexpr (std::is_same_v<T, Negate>) {
                collect_vars_in_binops(*n.operand, inside_binop, out);
            }
        },
        e.node);
}

// Statement index just past the run of unit declarations that follows an
// assignment; a canonical assert for the assignment sits exactly there.
size_t insertion_point(const Program& program, size_t assign_index) {
    size_t j = assign_index + 1;
    while (j < program.statements.size() &&
           std::holds_alternative<UnitAssignStmt>(program.statements[j].node))
        ++j;
    return j;
}

bool is_unit_ref(const UnitExpr& e, const std::string& name) {
    const auto* ref = std::get_if<UnitVarRef>(&e.node);
    return ref && ref->name == name;
}

bool is_dimensionless_literal(const UnitExpr& e) {
    const auto* lit = std::get_if<UnitLiteral>(&e.node);
    return lit && lit->value.dimensionless();
}

}  // namespace

const char* to_string(Agreement agreement) {
    switch (agreement) {
        case Agreement::Match: return "match";
        case Agreement::Mismatch: return "mismatch";
        case Agreement::Undeclared: return "undeclared";
        case Agreement::Unknowable: return "unknowable";
    }
    return "";
}

InferenceResult infer_units(const Program& program) {
    InferenceResult result;
    auto decls = collect_declarations(program);
    std::map<std::string, Inferred> flow;  // per-variable inferred value, for undeclared chains

    for (size_t i = 0; i < program.statements.size(); ++i) {
        const auto* assign = std::get_if<AssignStmt>(&program.statements[i].node);
        if (!assign) continue;
        const SourceSpan& span = program.statements[i].span;

        auto lookup = [&](const std::string& var) -> Inferred {
            if (const DeclSite* d = governing_decl(decls, var, i, /*prefer_after=*/false)) {
                if (d->value) return Inferred::known(*d->value);
                return Inferred::unknown();
            }
            auto it = flow.find(var);
            return it == flow.end() ? Inferred::unknown() : it->second;
        };

        auto infer = [&](const NumExpr& e, auto&& self) -> Inferred {
            return std::visit(
                [&](const auto& n) -> Inferred {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, NumberLiteral>) {
                        return Inferred::literal();
                    } else if constexpr (std::is_same_v<T, VarRef>) {
                        return lookup(n.name);
                    } else if constexpr (std::is_same_v<T, Negate>) {
                        return self(*n.operand, self);
                    } else {
                        Inferred lhs = self(*n.lhs, self);
                        Inferred rhs = self(*n.rhs, self);
                        if (lhs.kind == Inferred::Unknown || rhs.kind == Inferred::Unknown)
                            return Inferred::unknown();
                        bool both_literal =
                            lhs.kind == Inferred::PureLiteral && rhs.kind == Inferred::PureLiteral;
                        if (both_literal) return Inferred::literal();
                        UnitVector lu = lhs.kind == Inferred::Known ? lhs.unit : UnitVector{};
                        UnitVector ru = rhs.kind == Inferred::Known ? rhs.unit : UnitVector{};
                        switch (n.op) {
                            case NumOp::Mul:
                                return Inferred::known(lu.combine(ru));
                            case NumOp::Div:
                                return Inferred::known(lu.difference(ru));
                            case NumOp::Add:
                            case NumOp::Sub:
                                // A literal operand adopts the other side's unit.
                                if (lhs.kind == Inferred::PureLiteral) return Inferred::known(ru);
                                if (rhs.kind == Inferred::PureLiteral) return Inferred::known(lu);
                                if (lu == ru) return Inferred::known(lu);
                                result.diagnostics.push_back(
                                    {e.span, Severity::Error, "UCP101",
                                     std::string("operands of `") +
                                         (n.op == NumOp::Add ? "+" : "-") +
                                         "` carry different units: " + lu.to_string() + " vs " +
                                         ru.to_string()});
                                return Inferred::unknown();
                        }
                        return Inferred::unknown();
                    }
                },
                e.node);
        };

        Inferred inferred = infer(*assign->expr, infer);
        flow[assign->target] = inferred;

        UnitJudgment j;
        j.variable = assign->target;
        j.span = span;
        const DeclSite* d = governing_decl(decls, assign->target, i, /*prefer_after=*/true);
        if (d && d->value) j.declared = *d->value;
        if (inferred.kind == Inferred::Known) j.inferred = inferred.unit;

        if (inferred.kind == Inferred::Known && j.declared) {
            j.agreement = *j.inferred == *j.declared ? Agreement::Match : Agreement::Mismatch;
        } else if (inferred.kind == Inferred::Known) {
            j.agreement = Agreement::Undeclared;
        } else {
            j.agreement = Agreement::Unknowable;  // literal-defined or depends on unknowns
        }
        result.judgments.push_back(std::move(j));
    }
    return result;
}

SynthesisResult synthesize_asserts(const Program& program) {
    SynthesisResult result;
    result.program.name = program.name;
    result.program.docstring = program.docstring;

    // Unit names declared at or before each insertion point.
    std::set<std::string> declared;
    const auto& stmts = program.statements;

    // Pre-compute insertion points that already carry an assert.
    std::vector<Statement> out;
    for (size_t i = 0; i < stmts.size(); ++i) {
        out.push_back(stmts[i]);
        const auto* assign = std::get_if<AssignStmt>(&stmts[i].node);
        if (const auto* ua = std::get_if<UnitAssignStmt>(&stmts[i].node)) declared.insert(ua->target);
        if (!assign) continue;

        const SourceSpan assign_span = stmts[i].span;
        size_t j = insertion_point(program, i);
        // Emit the declarations between the assignment and the insertion point
        // before deciding, so the assert lands after them.
        for (size_t k = i + 1; k < j; ++k) {
            out.push_back(stmts[k]);
            declared.insert(std::get<UnitAssignStmt>(stmts[k].node).target);
        }

        bool has_assert = j < stmts.size() && std::holds_alternative<AssertStmt>(stmts[j].node);
        i = j - 1;  // outer loop resumes at the statement at the insertion point

        if (has_assert) continue;  // existing asserts are left untouched

        const auto* bin = std::get_if<NumBinOp>(&assign->expr->node);
        if (!bin) continue;  // literals and copies need no assert
        auto op = single_op(*assign->expr);
        if (!op) {
            result.diagnostics.push_back(
                {assign_span, Severity::Warning, "UCP201",
                 "cannot synthesize an assert for a compound expression"});
            continue;
        }
        if (!op->lhs.is_var && !op->rhs.is_var) continue;  // all-literal arithmetic

        std::string target_unit = assign->target + "_unit";
        std::vector<std::string> needed = {target_unit};
        if (op->lhs.is_var) needed.push_back(op->lhs.name + "_unit");
        if (op->rhs.is_var) needed.push_back(op->rhs.name + "_unit");
        bool missing = false;
        for (const std::string& n : needed) {
            if (!declared.count(n)) {
                result.diagnostics.push_back({assign_span, Severity::Warning, "UCP202",
                                              "cannot synthesize an assert: `" + n +
                                                  "` is not declared"});
                missing = true;
                break;
            }
        }
        if (missing) continue;

        SourceSpan span = assign_span;
        auto lhs_ref = unit_var(op->lhs.is_var ? op->lhs.name + "_unit" : "", span);
        auto rhs_ref = unit_var(op->rhs.is_var ? op->rhs.name + "_unit" : "", span);
        AssertStmt as;
        as.operands.push_back(unit_var(target_unit, span));
        switch (op->op) {
            case NumOp::Mul:
                if (op->lhs.is_var && op->rhs.is_var)
                    as.operands.push_back(unit_binop(UnitOp::Combine, lhs_ref, rhs_ref, span));
                else
                    as.operands.push_back(op->lhs.is_var ? lhs_ref : rhs_ref);
                break;
            case NumOp::Div:
                if (op->lhs.is_var && op->rhs.is_var) {
                    as.operands.push_back(unit_binop(UnitOp::Difference, lhs_ref, rhs_ref, span));
                } else if (op->lhs.is_var) {
                    as.operands.push_back(lhs_ref);  // literal divisor: plain equality
                } else {
                    as.operands.push_back(
                        unit_binop(UnitOp::Difference, unit_literal(UnitVector{}, span), rhs_ref,
                                   span));
                }
                break;
            case NumOp::Add:
            case NumOp::Sub:
                if (op->lhs.is_var) as.operands.push_back(lhs_ref);
                if (op->rhs.is_var) as.operands.push_back(rhs_ref);
                break;
        }
        Statement assert_stmt;
        assert_stmt.span = span;
        assert_stmt.node = std::move(as);
        out.push_back(std::move(assert_stmt));
    }

    result.program.statements = std::move(out);
    result.program.source = print_program(result.program);
    return result;
}

std::vector<Diagnostic> lint_asserts(const Program& program) {
    std::vector<Diagnostic> diags;
    const auto& stmts = program.statements;
    auto decls = collect_declarations(program);

    std::set<std::string> assigned_vars;
    std::set<std::string> arithmetic_vars;  // variables that need a declaration
    for (size_t i = 0; i < stmts.size(); ++i) {
        if (const auto* a = std::get_if<AssignStmt>(&stmts[i].node)) {
            assigned_vars.insert(a->target);
            if (contains_var_arithmetic(*a->expr)) arithmetic_vars.insert(a->target);
            collect_vars_in_binops(*a->expr, false, arithmetic_vars);
        } else if (const auto* r = std::get_if<ReturnStmt>(&stmts[i].node)) {
            collect_vars_in_binops(*r->expr, false, arithmetic_vars);
        }
    }

    for (size_t i = 0; i < stmts.size(); ++i) {
        const auto* assign = std::get_if<AssignStmt>(&stmts[i].node);
        if (!assign || !contains_var_arithmetic(*assign->expr)) continue;

        size_t j = insertion_point(program, i);
        const AssertStmt* following =
            j < stmts.size() ? std::get_if<AssertStmt>(&stmts[j].node) : nullptr;
        if (!following) {
            diags.push_back({stmts[i].span, Severity::Warning, "UCP001",
                             "arithmetic assignment to `" + assign->target +
                                 "` has no following assert"});
            continue;
        }

        auto op = single_op(*assign->expr);
        if (!op) {
            diags.push_back({stmts[j].span, Severity::Warning, "UCP002",
                             "non-canonical assert: `" + assign->target +
                                 "` is computed by a compound expression"});
            continue;
        }

        std::string target_unit = assign->target + "_unit";
        std::string a_unit = op->lhs.is_var ? op->lhs.name + "_unit" : "";
        std::string b_unit = op->rhs.is_var ? op->rhs.name + "_unit" : "";
        const auto& ops = following->operands;
        bool canonical = false;
        bool head_ok = !ops.empty() && is_unit_ref(*ops[0], target_unit);

        auto degenerate_ok = [&]() {
            const std::string& v = op->lhs.is_var ? a_unit : b_unit;
            return ops.size() == 2 && head_ok && is_unit_ref(*ops[1], v);
        };

        switch (op->op) {
            case NumOp::Mul:
                if (op->lhs.is_var && op->rhs.is_var) {
                    if (ops.size() == 2 && head_ok) {
                        const auto* bin = std::get_if<UnitBinOp>(&ops[1]->node);
                        canonical = bin && bin->op == UnitOp::Combine &&
                                    ((is_unit_ref(*bin->lhs, a_unit) && is_unit_ref(*bin->rhs, b_unit)) ||
                                     (is_unit_ref(*bin->lhs, b_unit) && is_unit_ref(*bin->rhs, a_unit)));
                    }
                } else {
                    canonical = degenerate_ok();
                }
                break;
            case NumOp::Div:
                if (op->lhs.is_var && op->rhs.is_var) {
                    if (ops.size() == 2 && head_ok) {
                        const auto* bin = std::get_if<UnitBinOp>(&ops[1]->node);
                        canonical = bin && bin->op == UnitOp::Difference &&
                                    is_unit_ref(*bin->lhs, a_unit) && is_unit_ref(*bin->rhs, b_unit);
                    }
                } else if (op->lhs.is_var) {
                    canonical = degenerate_ok();
                } else {
                    if (ops.size() == 2 && head_ok) {
                        const auto* bin = std::get_if<UnitBinOp>(&ops[1]->node);
                        canonical = bin && bin->op == UnitOp::Difference &&
                                    is_dimensionless_literal(*bin->lhs) &&
                                    is_unit_ref(*bin->rhs, b_unit);
                    }
                }
                break;
            case NumOp::Add:
            case NumOp::Sub:
                if (op->lhs.is_var && op->rhs.is_var) {
                    canonical = ops.size() == 3 && head_ok &&
                                ((is_unit_ref(*ops[1], a_unit) && is_unit_ref(*ops[2], b_unit)) ||
                                 (is_unit_ref(*ops[1], b_unit) && is_unit_ref(*ops[2], a_unit)));
                } else {
                    canonical = degenerate_ok();
                }
                break;
        }
        if (!canonical)
            diags.push_back({stmts[j].span, Severity::Warning, "UCP002",
                             "assert does not match the canonical form for `" +
                                 assign->target + "`"});
    }

    // Dangling declarations and missing declarations.
    std::set<std::string> reported_dangling;
    for (size_t i = 0; i < stmts.size(); ++i) {
        const auto* ua = std::get_if<UnitAssignStmt>(&stmts[i].node);
        if (!ua) continue;
        std::string base = unit_base_name(ua->target);
        if (!assigned_vars.count(base) && reported_dangling.insert(base).second)
            diags.push_back({stmts[i].span, Severity::Warning, "UCP003",
                             "unit declaration `" + ua->target + "` has no base variable"});
    }
    for (const std::string& var : arithmetic_vars) {
        if (!decls.count(var)) {
            SourceSpan span{1, 1, 1, 1};
            for (size_t i = 0; i < stmts.size(); ++i) {
                const auto* a = std::get_if<AssignStmt>(&stmts[i].node);
                if (a && a->target == var) {
                    span = stmts[i].span;
                    break;
                }
            }
            diags.push_back({span, Severity::Warning, "UCP004",
                             "variable `" + var + "` is used in arithmetic but has no unit declaration"});
        }
    }

    // Vacuous asserts: every operand statically dimensionless.
    for (size_t i = 0; i < stmts.size(); ++i) {
        const auto* as = std::get_if<AssertStmt>(&stmts[i].node);
        if (!as) continue;
        bool all_empty = true;
        for (const UnitExprPtr& e : as->operands) {
            auto static_value = [&](const UnitExpr& u, auto&& self) -> std::optional<UnitVector> {
                if (const auto* lit = std::get_if<UnitLiteral>(&u.node)) return lit->value;
                if (const auto* ref = std::get_if<UnitVarRef>(&u.node)) {
                    if (!is_unit_name(ref->name)) return std::nullopt;
                    const DeclSite* d =
                        governing_decl(decls, unit_base_name(ref->name), i, false);
                    return d ? d->value : std::nullopt;
                }
                const auto& bin = std::get<UnitBinOp>(u.node);
                auto lhs = self(*bin.lhs, self);
                auto rhs = self(*bin.rhs, self);
                if (!lhs || !rhs) return std::nullopt;
                return bin.op == UnitOp::Combine ? lhs->combine(*rhs) : lhs->difference(*rhs);
            };
            auto v = static_value(*e, static_value);
            if (!v || !v->dimensionless()) {
                all_empty = false;
                break;
            }
        }
        if (all_empty)
            diags.push_back({stmts[i].span, Severity::Warning, "UCP005",
                             "dimensionally vacuous assert: every operand is dimensionless"});
    }

    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return a.span.line_start < b.span.line_start;
    });
    return diags;
}

}  // namespace ucp

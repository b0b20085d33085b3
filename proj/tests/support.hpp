#pragma once

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucp/ast.hpp"
#include "ucp/parser.hpp"
#include "ucp/unit_vector.hpp"

namespace ucp::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(UCP_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream f(fixture_path(name));
    if (!f) throw std::runtime_error("missing fixture " + name);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline Program parse_fixture(const std::string& name) {
    return parse_program(read_fixture(name));
}

// ---- randomized inputs -----------------------------------------------------

inline UnitVector random_unit_vector(std::mt19937& rng) {
    static const char* symbols[] = {"apples", "bags", "cents", "days",   "hours",
                                    "kb",     "miles", "people", "slices", "books"};
    std::uniform_int_distribution<int> size_dist(0, 4);
    std::uniform_int_distribution<int> sym_dist(0, 9);
    std::uniform_int_distribution<int> exp_dist(-3, 3);
    UnitVector v;
    int n = size_dist(rng);
    for (int i = 0; i < n; ++i) {
        int e = exp_dist(rng);
        if (e == 0) e = 1;
        v = v.combine(UnitVector{{symbols[sym_dist(rng)], e}});
    }
    return v;
}

// Straight-line program with consistent declared units: literal-valued source
// variables followed by derived variables whose declarations follow the
// operator rules. No asserts; synthesize_asserts adds them.
struct GeneratedProgram {
    Program program;
    std::vector<std::string> corruptible;  // variables safe to corrupt for fault tests
};

inline GeneratedProgram random_consistent_program(std::mt19937& rng) {
    std::uniform_int_distribution<int> sources_dist(2, 4);
    std::uniform_int_distribution<int> derived_dist(1, 6);
    std::uniform_int_distribution<int> value_dist(1, 9);
    std::uniform_int_distribution<int> op_dist(0, 3);

    struct Var {
        std::string name;
        UnitVector unit;
        double value;
        bool used = false;
    };
    std::vector<Var> vars;

    Program prog;
    prog.name = "solution";
    auto declare = [&](const std::string& name, const UnitVector& u) {
        Statement s;
        s.node = UnitAssignStmt{name + "_unit", unit_literal(u)};
        prog.statements.push_back(std::move(s));
    };

    int sources = sources_dist(rng);
    for (int i = 0; i < sources; ++i) {
        Var v;
        v.name = "v" + std::to_string(vars.size());
        v.unit = random_unit_vector(rng);
        v.value = value_dist(rng);
        Statement s;
        s.node = AssignStmt{v.name, num_literal(std::to_string(int(v.value)))};
        prog.statements.push_back(std::move(s));
        declare(v.name, v.unit);
        vars.push_back(v);
    }

    int derived = derived_dist(rng);
    for (int i = 0; i < derived; ++i) {
        std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
        NumOp op = static_cast<NumOp>(op_dist(rng));
        size_t a = pick(rng);
        size_t b = pick(rng);
        if (op == NumOp::Add || op == NumOp::Sub) {
            // operands must share a unit; fall back to a twice
            if (!(vars[a].unit == vars[b].unit)) b = a;
        }
        if (op == NumOp::Div) {
            // x / x cancels its own unit, which would make a corrupted
            // declaration of x unobservable
            if (b == a) b = (a + 1) % vars.size();
            if (vars[b].value == 0) op = NumOp::Mul;
        }
        if (op == NumOp::Sub && vars[a].value == vars[b].value)
            op = NumOp::Add;  // keep every value nonzero so later divisions stay safe

        Var v;
        v.name = "v" + std::to_string(vars.size());
        switch (op) {
            case NumOp::Add:
                v.unit = vars[a].unit;
                v.value = vars[a].value + vars[b].value;
                break;
            case NumOp::Sub:
                v.unit = vars[a].unit;
                v.value = vars[a].value - vars[b].value;
                break;
            case NumOp::Mul:
                v.unit = vars[a].unit.combine(vars[b].unit);
                v.value = vars[a].value * vars[b].value;
                break;
            case NumOp::Div:
                v.unit = vars[a].unit.difference(vars[b].unit);
                v.value = vars[a].value / vars[b].value;
                break;
        }
        Statement s;
        s.node = AssignStmt{v.name, num_binop(op, num_var(vars[a].name), num_var(vars[b].name))};
        prog.statements.push_back(std::move(s));
        declare(v.name, v.unit);
        vars[a].used = true;
        vars[b].used = true;
        vars.push_back(v);
    }

    Statement ret;
    ret.node = ReturnStmt{num_var(vars.back().name)};
    prog.statements.push_back(std::move(ret));
    prog.source = "";

    GeneratedProgram out;
    out.program = std::move(prog);
    for (size_t i = 0; i < vars.size(); ++i) {
        bool is_derived = i >= static_cast<size_t>(sources);
        if (vars[i].used || is_derived) out.corruptible.push_back(vars[i].name);
    }
    return out;
}

// Replace the declaration of `var` with a unit guaranteed to differ.
inline Program corrupt_declaration(const Program& program, const std::string& var) {
    Program out = program;
    std::string unit_name = var + "_unit";
    for (Statement& s : out.statements) {
        if (auto* ua = std::get_if<UnitAssignStmt>(&s.node); ua && ua->target == unit_name) {
            const auto* lit = std::get_if<UnitLiteral>(&ua->expr->node);
            UnitVector corrupted =
                lit->value.combine(UnitVector{{"bogus_corruption_symbol", 1}});
            ua->expr = unit_literal(corrupted);
            break;
        }
    }
    return out;
}

}  // namespace ucp::testing

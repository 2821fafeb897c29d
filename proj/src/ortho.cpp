#include "s2l/ortho.hpp"

#include "s2l/diag.hpp"
#include "s2l/format.hpp"
#include "s2l/theory.hpp"

#include <algorithm>

namespace s2l::lctrs {

namespace {

bool unify_into(TermPtr a, TermPtr b, Subst& s);

bool bind_var(const Var& v, const TermPtr& t, Subst& s) {
    if (const Var* w = t->as_var(); w && w->name == v.name) return true;
    if (!(t->sort() == v.sort)) return false;
    TermPtr resolved = apply_subst(t, s);
    if (has_var(resolved, v.name)) return false; // occurs check
    // Eliminate v from existing bindings, then record it.
    Subst single{{v.name, resolved}};
    for (auto& [name, bound] : s) {
        bound = apply_subst(bound, single);
    }
    s[v.name] = resolved;
    return true;
}

bool unify_into(TermPtr a, TermPtr b, Subst& s) {
    a = apply_subst(a, s);
    b = apply_subst(b, s);
    if (const Var* v = a->as_var()) return bind_var(*v, b, s);
    if (const Var* v = b->as_var()) return bind_var(*v, a, s);
    if (a->node().index() != b->node().index()) return false;
    if (const IntVal* n = a->as_int()) return n->value == b->as_int()->value;
    if (const BoolVal* x = a->as_bool()) return x->value == b->as_bool()->value;
    if (const Calc* c = a->as_calc()) {
        if (c->op != b->as_calc()->op) return false;
    } else if (a->as_app()->symbol != b->as_app()->symbol) {
        return false;
    }
    const auto& xs = a->args();
    const auto& ys = b->args();
    if (xs.size() != ys.size()) return false;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!unify_into(xs[i], ys[i], s)) return false;
    }
    return true;
}

} // namespace

std::optional<Subst> unify(const TermPtr& a, const TermPtr& b) {
    Subst s;
    if (!unify_into(a, b, s)) return std::nullopt;
    return s;
}

namespace {

void flatten_conj(const TermPtr& t, std::vector<TermPtr>& out) {
    if (const Calc* c = t->as_calc(); c && c->op == TheoryOp::And) {
        flatten_conj(c->args[0], out);
        flatten_conj(c->args[1], out);
        return;
    }
    out.push_back(t);
}

bool is_negation_of(const TermPtr& a, const TermPtr& b) {
    const Calc* c = a->as_calc();
    return c && c->op == TheoryOp::Not && term_eq(c->args[0], b);
}

} // namespace

SatResult bounded_sat(const TermPtr& constraint, std::int64_t bound) {
    if (constraint->is_ground()) {
        try {
            return interpret_constraint(constraint) ? SatResult::Sat : SatResult::Unsat;
        } catch (const EvalError&) {
            return SatResult::Unknown;
        }
    }
    // psi and not psi never holds, whatever the variables are.
    std::vector<TermPtr> conjuncts;
    flatten_conj(constraint, conjuncts);
    for (size_t i = 0; i < conjuncts.size(); ++i) {
        for (size_t j = 0; j < conjuncts.size(); ++j) {
            if (i != j && is_negation_of(conjuncts[i], conjuncts[j])) return SatResult::Unsat;
        }
    }

    std::vector<Var> int_vars, bool_vars;
    for (const Var& v : vars_of(constraint)) {
        (v.sort == sort_bool ? bool_vars : int_vars).push_back(v);
    }
    if (int_vars.size() > 2 || bool_vars.size() > 4) return SatResult::Unknown;

    std::vector<std::int64_t> ints(int_vars.size(), -bound);
    size_t bool_combos = (size_t)1 << bool_vars.size();
    while (true) {
        for (size_t bc = 0; bc < bool_combos; ++bc) {
            Subst s;
            for (size_t i = 0; i < int_vars.size(); ++i) s[int_vars[i].name] = mk_int(ints[i]);
            for (size_t i = 0; i < bool_vars.size(); ++i) {
                s[bool_vars[i].name] = mk_bool((bc >> i) & 1);
            }
            try {
                if (interpret_constraint(apply_subst(constraint, s))) return SatResult::Sat;
            } catch (const EvalError&) {
                // overflow for this assignment; not a witness
            }
        }
        // next integer tuple
        size_t k = 0;
        while (k < ints.size() && ints[k] == bound) {
            ints[k] = -bound;
            ++k;
        }
        if (k == ints.size()) break;
        ++ints[k];
        if (int_vars.empty()) break;
    }
    return SatResult::Unknown;
}

namespace {

struct RenamedRule {
    TermPtr lhs;
    TermPtr constraint;
};

RenamedRule rename_rule(const ConstrainedRule& r, const std::string& prefix) {
    std::map<std::string, std::string> renaming;
    for (const TermPtr& part : {r.lhs, r.rhs, r.constraint}) {
        for (const Var& v : vars_of(part)) renaming[v.name] = prefix + v.name;
    }
    return {rename_vars(r.lhs, renaming), rename_vars(r.constraint, renaming)};
}

// Proper non-variable, non-theory positions of t (candidate overlap spots).
void proper_app_positions(const TermPtr& t, Position& cur, std::vector<Position>& out) {
    const auto& args = t->args();
    for (size_t i = 0; i < args.size(); ++i) {
        cur.push_back((int)i + 1);
        if (args[i]->as_app()) out.push_back(cur);
        proper_app_positions(args[i], cur, out);
        cur.pop_back();
    }
}

// A calculation instance can appear inside an lhs instance iff the lhs has a
// theory-symbol subterm all of whose arguments are variables or values.
std::optional<Position> calc_overlap_position(const TermPtr& t, Position& cur) {
    if (const Calc* c = t->as_calc()) {
        bool instantiable = true;
        for (const auto& a : c->args) {
            if (!a->as_var() && !a->is_value()) instantiable = false;
        }
        if (instantiable) return cur;
    }
    const auto& args = t->args();
    for (size_t i = 0; i < args.size(); ++i) {
        cur.push_back((int)i + 1);
        if (auto p = calc_overlap_position(args[i], cur)) return p;
        cur.pop_back();
    }
    return std::nullopt;
}

} // namespace

std::string OrthoReport::str() const {
    std::string out;
    switch (status) {
    case OrthoStatus::Orthogonal: out = "orthogonal"; break;
    case OrthoStatus::NotOrthogonal: out = "not orthogonal"; break;
    case OrthoStatus::Unknown: out = "unknown"; break;
    }
    for (const auto& f : findings) {
        out += "\n  ";
        out += f.description;
    }
    return out;
}

OrthoReport check_orthogonal(const Lctrs& sys) {
    OrthoReport report;
    bool unknown = false;

    for (size_t i = 0; i < sys.rules.size(); ++i) {
        const ConstrainedRule& r = sys.rules[i];
        if (!r.left_linear()) {
            report.findings.push_back(
                {OrthoFinding::NotLeftLinear, (int)i, -1, {},
                 sys.rule_id(i) + " is not left-linear: " + term_to_string(r.lhs)});
        }
        Position cur;
        if (auto p = calc_overlap_position(r.lhs, cur)) {
            report.findings.push_back(
                {OrthoFinding::CalcOverlap, (int)i, -1, *p,
                 sys.rule_id(i) + " overlaps the calculation rules at position " +
                     position_str(*p) + " of " + term_to_string(r.lhs)});
        }
    }

    for (size_t j = 0; j < sys.rules.size(); ++j) {
        RenamedRule outer = rename_rule(sys.rules[j], "r$");
        std::vector<Position> positions;
        Position cur;
        positions.push_back({}); // root
        proper_app_positions(outer.lhs, cur, positions);
        for (size_t i = 0; i < sys.rules.size(); ++i) {
            RenamedRule inner = rename_rule(sys.rules[i], "l$");
            for (const Position& p : positions) {
                if (p.empty() && i == j) continue; // a rule trivially overlaps itself
                auto mgu = unify(inner.lhs, subterm_at(outer.lhs, p));
                if (!mgu) continue;
                TermPtr psi = mk_calc(TheoryOp::And, {apply_subst(inner.constraint, *mgu),
                                                      apply_subst(outer.constraint, *mgu)});
                switch (bounded_sat(psi)) {
                case SatResult::Unsat:
                    break;
                case SatResult::Sat:
                    report.findings.push_back(
                        {OrthoFinding::Overlap, (int)i, (int)j, p,
                         sys.rule_id(i) + " overlaps " + sys.rule_id(j) + " at position " +
                             position_str(p)});
                    break;
                case SatResult::Unknown:
                    unknown = true;
                    report.findings.push_back(
                        {OrthoFinding::UnknownOverlap, (int)i, (int)j, p,
                         "cannot decide whether " + sys.rule_id(i) + " overlaps " +
                             sys.rule_id(j) + " at position " + position_str(p) +
                             " (constraint satisfiability out of the bounded search space)"});
                    break;
                }
            }
        }
    }

    bool definite = false;
    for (const auto& f : report.findings) {
        if (f.kind != OrthoFinding::UnknownOverlap) definite = true;
    }
    report.status = definite   ? OrthoStatus::NotOrthogonal
                    : unknown ? OrthoStatus::Unknown
                              : OrthoStatus::Orthogonal;
    return report;
}

} // namespace s2l::lctrs

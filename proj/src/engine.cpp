#include "s2l/engine.hpp"

#include "s2l/format.hpp"
#include "s2l/theory.hpp"

#include <map>
#include <unordered_map>

namespace s2l::lctrs {

namespace {

bool match_into(const TermPtr& pattern, const TermPtr& subject, Subst& s) {
    if (const Var* v = pattern->as_var()) {
        auto it = s.find(v->name);
        if (it != s.end()) return term_eq(it->second, subject);
        if (!(subject->sort() == v->sort)) return false;
        s.emplace(v->name, subject);
        return true;
    }
    if (pattern->node().index() != subject->node().index()) return false;
    if (const IntVal* n = pattern->as_int()) return n->value == subject->as_int()->value;
    if (const BoolVal* b = pattern->as_bool()) return b->value == subject->as_bool()->value;
    if (const Calc* c = pattern->as_calc()) {
        if (c->op != subject->as_calc()->op) return false;
    } else {
        const App* f = pattern->as_app();
        const App* g = subject->as_app();
        if (f->symbol != g->symbol) return false;
    }
    const auto& ps = pattern->args();
    const auto& ss = subject->args();
    if (ps.size() != ss.size()) return false;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (!match_into(ps[i], ss[i], s)) return false;
    }
    return true;
}

} // namespace

std::optional<Subst> match(const TermPtr& pattern, const TermPtr& subject) {
    Subst s;
    if (!match_into(pattern, subject, s)) return std::nullopt;
    return s;
}

namespace {

// `at` is the subterm the rule is tried on; callers that already hold it
// avoid re-walking the subject from the root.
std::optional<Subst> rule_applies_to(const ConstrainedRule& rule, const TermPtr& at) {
    auto m = match(rule.lhs, at);
    if (!m) return std::nullopt;
    // Logical variables must be instantiated with values.
    for (const std::string& lv : rule.logical_vars()) {
        auto it = m->find(lv);
        if (it == m->end() || !it->second->is_value()) return std::nullopt;
    }
    if (!rule.is_unconstrained()) {
        TermPtr phi = apply_subst(rule.constraint, *m);
        if (!phi->is_ground()) return std::nullopt;
        if (!interpret_constraint(phi)) return std::nullopt;
    }
    return m;
}

} // namespace

std::optional<Subst> rule_applies(const ConstrainedRule& rule, const TermPtr& subject,
                                  const Position& pos) {
    return rule_applies_to(rule, subterm_at(subject, pos));
}

void reject_unsupported_rules(const Lctrs& sys) {
    for (size_t i = 0; i < sys.rules.size(); ++i) {
        const ConstrainedRule& r = sys.rules[i];
        for (const std::string& lv : r.logical_vars()) {
            if (!has_var(r.lhs, lv)) {
                throw EngineError("rule " + sys.rule_id(i) + " has variable " + lv +
                                  " in its right-hand side or constraint that is not bound by "
                                  "the left-hand side; the engine cannot choose a value for it");
            }
        }
    }
}

namespace {

// Leftmost-innermost calculation redex: first post-order node that is a
// theory symbol applied to values only.
bool find_calc_redex(const TermPtr& t, Position& pos) {
    const auto& args = t->args();
    for (size_t i = 0; i < args.size(); ++i) {
        pos.push_back((int)i + 1);
        if (find_calc_redex(args[i], pos)) return true;
        pos.pop_back();
    }
    if (const Calc* c = t->as_calc()) {
        bool all_values = true;
        for (const auto& a : c->args) {
            if (!a->is_value()) {
                all_values = false;
                break;
            }
        }
        if (all_values) return true;
    }
    return false;
}

using RuleIndex = std::unordered_map<std::string, std::vector<int>>;

RuleIndex index_by_root(const Lctrs& sys) {
    RuleIndex idx;
    for (size_t i = 0; i < sys.rules.size(); ++i) {
        if (const App* a = sys.rules[i].lhs->as_app()) {
            idx[a->symbol].push_back((int)i);
        }
    }
    return idx;
}

void collect_rule_redexes(const TermPtr& t, Position& pos, const Lctrs& sys,
                          const RuleIndex& idx, std::vector<Redex>& out) {
    if (const App* a = t->as_app()) {
        auto it = idx.find(a->symbol);
        if (it != idx.end()) {
            for (int ri : it->second) {
                if (rule_applies_to(sys.rules[ri], t)) {
                    out.push_back({pos, ri});
                }
            }
        }
    }
    const auto& args = t->args();
    for (size_t i = 0; i < args.size(); ++i) {
        pos.push_back((int)i + 1);
        collect_rule_redexes(args[i], pos, sys, idx, out);
        pos.pop_back();
    }
}

std::optional<Redex> find_redex_indexed(const TermPtr& t, const Lctrs& sys,
                                        const RuleIndex& idx) {
    Position pos;
    if (find_calc_redex(t, pos)) {
        return Redex{pos, kCalcStep};
    }
    std::vector<Redex> redexes;
    pos.clear();
    collect_rule_redexes(t, pos, sys, idx, redexes);
    if (redexes.empty()) return std::nullopt;
    if (redexes.size() > 1) {
        std::string msg = "ambiguous redex: ";
        for (size_t i = 0; i < redexes.size(); ++i) {
            if (i) msg += ", ";
            msg += sys.rule_id(redexes[i].rule_index) + " at " + position_str(redexes[i].pos);
        }
        msg += " all apply to " + term_to_string(t);
        throw EngineError(msg);
    }
    return redexes.front();
}

} // namespace

std::optional<Redex> find_redex(const TermPtr& t, const Lctrs& sys) {
    reject_unsupported_rules(sys);
    return find_redex_indexed(t, sys, index_by_root(sys));
}

RewriteResult rewrite_to_nf(const TermPtr& t, const Lctrs& sys, std::uint64_t fuel,
                            bool keep_trace) {
    reject_unsupported_rules(sys);
    RuleIndex idx = index_by_root(sys);

    RewriteResult res;
    res.term = t;
    res.steps = 0;
    res.trace.initial = t;

    while (true) {
        std::optional<Redex> rx = find_redex_indexed(res.term, sys, idx);
        if (!rx) {
            res.status = RewriteStatus::NormalForm;
            return res;
        }
        if (res.steps >= fuel) {
            res.status = RewriteStatus::FuelExhausted;
            return res;
        }
        TermPtr next;
        std::string id;
        if (rx->rule_index == kCalcStep) {
            TermPtr sub = subterm_at(res.term, rx->pos);
            next = replace_at(res.term, rx->pos, interpret_theory(sub));
            id = "calc";
        } else {
            const ConstrainedRule& rule = sys.rules[rx->rule_index];
            auto m = rule_applies(rule, res.term, rx->pos);
            next = replace_at(res.term, rx->pos, apply_subst(rule.rhs, *m));
            id = sys.rule_id(rx->rule_index);
        }
        res.steps += 1;
        res.term = next;
        if (keep_trace) {
            res.trace.steps.push_back({rx->pos, rx->rule_index, id, next});
        }
    }
}

} // namespace s2l::lctrs

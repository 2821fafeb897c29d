#include "s2l/lctrs.hpp"

#include <algorithm>

namespace s2l::lctrs {

namespace {
void add_names(const TermPtr& t, std::vector<std::string>& out) {
    for (const Var& v : vars_of(t)) {
        if (std::find(out.begin(), out.end(), v.name) == out.end()) out.push_back(v.name);
    }
}
} // namespace

std::vector<std::string> ConstrainedRule::logical_vars() const {
    std::vector<std::string> lv;
    add_names(constraint, lv);
    std::vector<std::string> rhs_vars;
    add_names(rhs, rhs_vars);
    for (const auto& name : rhs_vars) {
        if (!has_var(lhs, name) && std::find(lv.begin(), lv.end(), name) == lv.end()) {
            lv.push_back(name);
        }
    }
    return lv;
}

bool rule_eq(const ConstrainedRule& a, const ConstrainedRule& b) {
    return term_eq(a.lhs, b.lhs) && term_eq(a.rhs, b.rhs) && term_eq(a.constraint, b.constraint);
}

const SymbolDecl* Lctrs::find_symbol(const std::string& name) const {
    for (const auto& d : symbols) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

void Lctrs::add_sort(const Sort& s) {
    if (std::find(sorts.begin(), sorts.end(), s) == sorts.end()) sorts.push_back(s);
}

void Lctrs::add_symbol(const SymbolDecl& d) {
    if (const SymbolDecl* have = find_symbol(d.name)) {
        if (!(*have == d)) {
            throw Error("conflicting declarations for symbol " + d.name);
        }
        return;
    }
    symbols.push_back(d);
}

void Lctrs::normalize() {
    std::sort(sorts.begin(), sorts.end());
    std::sort(symbols.begin(), symbols.end(),
              [](const SymbolDecl& a, const SymbolDecl& b) { return a.name < b.name; });
}

std::string Lctrs::rule_id(size_t i) const {
    std::string root = "?";
    if (i < rules.size()) {
        if (const App* a = rules[i].lhs->as_app()) root = a->symbol;
    }
    return "r" + std::to_string(i + 1) + ":" + root;
}

namespace {

void check_term(const Lctrs& sys, const TermPtr& t, const Sort& expected, const std::string& where,
                std::vector<Diagnostic>& out) {
    if (!(t->sort() == expected)) {
        out.push_back({where + ": expected sort " + expected.name + ", found " + t->sort().name, {}});
    }
    if (const App* a = t->as_app()) {
        const SymbolDecl* d = sys.find_symbol(a->symbol);
        if (!d) {
            out.push_back({where + ": undeclared symbol " + a->symbol, {}});
            return;
        }
        if (!(d->result == a->sort)) {
            out.push_back({where + ": symbol " + a->symbol + " used with result sort " +
                               a->sort.name + " but declared " + d->result.name,
                           {}});
        }
        if (d->args.size() != a->args.size()) {
            out.push_back({where + ": symbol " + a->symbol + " takes " +
                               std::to_string(d->args.size()) + " arguments, got " +
                               std::to_string(a->args.size()),
                           {}});
            return;
        }
        for (size_t i = 0; i < a->args.size(); ++i) {
            check_term(sys, a->args[i], d->args[i], where, out);
        }
        return;
    }
    if (const Calc* c = t->as_calc()) {
        if (c->op == TheoryOp::Eq || c->op == TheoryOp::Ne) {
            Sort s0 = c->args[0]->sort();
            Sort s1 = c->args[1]->sort();
            if (!(s0 == s1) || !is_theory_sort(s0)) {
                out.push_back({where + ": ill-sorted (dis)equality", {}});
            }
            check_term(sys, c->args[0], s0, where, out);
            check_term(sys, c->args[1], s0, where, out);
            return;
        }
        for (const auto& arg : c->args) {
            check_term(sys, arg, op_arg_sort(c->op), where, out);
        }
    }
}

// Variables must be used with one consistent sort within a rule.
void check_var_sorts(const ConstrainedRule& r, const std::string& where,
                     std::vector<Diagnostic>& out) {
    std::map<std::string, Sort> seen;
    for (const TermPtr& part : {r.lhs, r.rhs, r.constraint}) {
        for (const Var& v : vars_of(part)) {
            auto [it, fresh] = seen.emplace(v.name, v.sort);
            if (!fresh && !(it->second == v.sort)) {
                out.push_back({where + ": variable " + v.name + " used with sorts " +
                                   it->second.name + " and " + v.sort.name,
                               {}});
            }
        }
    }
}

} // namespace

std::vector<Diagnostic> Lctrs::validate() const {
    std::vector<Diagnostic> out;
    for (const auto& s : {sort_int, sort_bool}) {
        if (std::find(sorts.begin(), sorts.end(), s) == sorts.end()) {
            out.push_back({"theory sort " + s.name + " not declared", {}});
        }
    }
    for (const auto& d : symbols) {
        for (const auto& s : d.args) {
            if (std::find(sorts.begin(), sorts.end(), s) == sorts.end()) {
                out.push_back({"symbol " + d.name + " uses undeclared sort " + s.name, {}});
            }
        }
        if (std::find(sorts.begin(), sorts.end(), d.result) == sorts.end()) {
            out.push_back({"symbol " + d.name + " uses undeclared sort " + d.result.name, {}});
        }
        if (op_from_name(d.name)) {
            out.push_back({"symbol name " + d.name + " clashes with a theory symbol", {}});
        }
    }
    for (size_t i = 0; i < rules.size(); ++i) {
        const ConstrainedRule& r = rules[i];
        std::string where = rule_id(i);
        if (!r.lhs->as_app()) {
            out.push_back({where + ": left-hand side must be an application of a term symbol", {}});
            continue;
        }
        check_term(*this, r.lhs, r.lhs->sort(), where + " (lhs)", out);
        check_term(*this, r.rhs, r.lhs->sort(), where + " (rhs)", out);
        if (!r.constraint->is_theory()) {
            out.push_back({where + ": constraint contains term symbols", {}});
        } else {
            check_term(*this, r.constraint, sort_bool, where + " (constraint)", out);
        }
        check_var_sorts(r, where, out);
    }
    return out;
}

bool lctrs_eq(const Lctrs& a, const Lctrs& b) {
    if (a.sorts != b.sorts || !(a.symbols == b.symbols)) return false;
    if (a.rules.size() != b.rules.size()) return false;
    for (size_t i = 0; i < a.rules.size(); ++i) {
        if (!rule_eq(a.rules[i], b.rules[i])) return false;
    }
    return true;
}

} // namespace s2l::lctrs

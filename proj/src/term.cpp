#include "s2l/term.hpp"

#include "s2l/diag.hpp"

#include <algorithm>

namespace s2l::lctrs {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

const std::vector<TermPtr> kNoArgs;

} // namespace

int op_arity(TheoryOp op) { return op == TheoryOp::Not ? 1 : 2; }

Sort op_result_sort(TheoryOp op) {
    switch (op) {
    case TheoryOp::Add:
    case TheoryOp::Sub:
    case TheoryOp::Mul:
    case TheoryOp::Exp:
    case TheoryOp::Div:
    case TheoryOp::Mod:
        return sort_int;
    default:
        return sort_bool;
    }
}

Sort op_arg_sort(TheoryOp op) {
    switch (op) {
    case TheoryOp::And:
    case TheoryOp::Or:
    case TheoryOp::Imp:
    case TheoryOp::Not:
        return sort_bool;
    default:
        return sort_int;
    }
}

const char* op_name(TheoryOp op) {
    switch (op) {
    case TheoryOp::Add: return "+";
    case TheoryOp::Sub: return "-";
    case TheoryOp::Mul: return "*";
    case TheoryOp::Exp: return "exp";
    case TheoryOp::Div: return "div";
    case TheoryOp::Mod: return "mod";
    case TheoryOp::Ge: return ">=";
    case TheoryOp::Gt: return ">";
    case TheoryOp::Lt: return "<";
    case TheoryOp::Le: return "<=";
    case TheoryOp::Eq: return "=";
    case TheoryOp::Ne: return "!=";
    case TheoryOp::And: return "and";
    case TheoryOp::Or: return "or";
    case TheoryOp::Imp: return "=>";
    case TheoryOp::Not: return "not";
    }
    return "?";
}

std::optional<TheoryOp> op_from_name(const std::string& name) {
    static const std::map<std::string, TheoryOp> table = {
        {"+", TheoryOp::Add},   {"-", TheoryOp::Sub},   {"*", TheoryOp::Mul},
        {"exp", TheoryOp::Exp}, {"div", TheoryOp::Div}, {"mod", TheoryOp::Mod},
        {">=", TheoryOp::Ge},   {">", TheoryOp::Gt},    {"<", TheoryOp::Lt},
        {"<=", TheoryOp::Le},   {"=", TheoryOp::Eq},    {"!=", TheoryOp::Ne},
        {"and", TheoryOp::And}, {"or", TheoryOp::Or},   {"=>", TheoryOp::Imp},
        {"not", TheoryOp::Not},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

Sort Term::sort() const {
    return std::visit(overloaded{
                          [](const Var& v) { return v.sort; },
                          [](const IntVal&) { return sort_int; },
                          [](const BoolVal&) { return sort_bool; },
                          [](const Calc& c) { return op_result_sort(c.op); },
                          [](const App& a) { return a.sort; },
                      },
                      node_);
}

bool Term::is_theory() const {
    if (as_app()) return false;
    for (const auto& a : args()) {
        if (!a->is_theory()) return false;
    }
    return true;
}

bool Term::is_ground() const {
    if (as_var()) return false;
    for (const auto& a : args()) {
        if (!a->is_ground()) return false;
    }
    return true;
}

const std::vector<TermPtr>& Term::args() const {
    if (const Calc* c = as_calc()) return c->args;
    if (const App* a = as_app()) return a->args;
    return kNoArgs;
}

size_t Term::node_count() const {
    size_t n = 1;
    for (const auto& a : args()) n += a->node_count();
    return n;
}

TermPtr mk_var(std::string name, Sort sort) {
    return std::make_shared<Term>(Var{std::move(name), std::move(sort)});
}
TermPtr mk_int(std::int64_t v) { return std::make_shared<Term>(IntVal{v}); }
TermPtr mk_bool(bool v) { return std::make_shared<Term>(BoolVal{v}); }

TermPtr mk_calc(TheoryOp op, std::vector<TermPtr> args) {
    if ((int)args.size() != op_arity(op)) {
        throw EvalError(std::string("wrong arity for theory symbol ") + op_name(op));
    }
    return std::make_shared<Term>(Calc{op, std::move(args)});
}

TermPtr mk_app(std::string symbol, Sort sort, std::vector<TermPtr> args) {
    return std::make_shared<Term>(App{std::move(symbol), std::move(sort), std::move(args)});
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->node().index() != b->node().index()) return false;
    if (const Var* v = a->as_var()) {
        const Var* w = b->as_var();
        return v->name == w->name && v->sort == w->sort;
    }
    if (const IntVal* v = a->as_int()) return v->value == b->as_int()->value;
    if (const BoolVal* v = a->as_bool()) return v->value == b->as_bool()->value;
    if (const Calc* c = a->as_calc()) {
        if (c->op != b->as_calc()->op) return false;
    } else if (const App* f = a->as_app()) {
        const App* g = b->as_app();
        if (f->symbol != g->symbol || !(f->sort == g->sort)) return false;
    }
    const auto& xs = a->args();
    const auto& ys = b->args();
    if (xs.size() != ys.size()) return false;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!term_eq(xs[i], ys[i])) return false;
    }
    return true;
}

std::string position_str(const Position& p) {
    if (p.empty()) return "e"; // epsilon, the root
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(p[i]);
    }
    return out;
}

TermPtr subterm_at(const TermPtr& t, const Position& p) {
    TermPtr cur = t;
    for (int idx : p) {
        const auto& args = cur->args();
        if (idx < 1 || (size_t)idx > args.size()) {
            throw EvalError("position " + position_str(p) + " not in term");
        }
        cur = args[idx - 1];
    }
    return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& repl) {
    if (p.empty()) return repl;
    const auto& args = t->args();
    int idx = p.front();
    if (idx < 1 || (size_t)idx > args.size()) {
        throw EvalError("position " + position_str(p) + " not in term");
    }
    std::vector<TermPtr> new_args = args;
    new_args[idx - 1] = replace_at(args[idx - 1], Position(p.begin() + 1, p.end()), repl);
    if (const Calc* c = t->as_calc()) return mk_calc(c->op, std::move(new_args));
    const App* a = t->as_app();
    return mk_app(a->symbol, a->sort, std::move(new_args));
}

namespace {
void collect_vars(const TermPtr& t, std::vector<Var>& out) {
    if (const Var* v = t->as_var()) {
        for (const auto& seen : out) {
            if (seen.name == v->name) return;
        }
        out.push_back(*v);
        return;
    }
    for (const auto& a : t->args()) collect_vars(a, out);
}
} // namespace

std::vector<Var> vars_of(const TermPtr& t) {
    std::vector<Var> out;
    collect_vars(t, out);
    return out;
}

bool has_var(const TermPtr& t, const std::string& name) {
    if (const Var* v = t->as_var()) return v->name == name;
    for (const auto& a : t->args()) {
        if (has_var(a, name)) return true;
    }
    return false;
}

namespace {
bool linear_walk(const TermPtr& t, std::vector<std::string>& seen) {
    if (const Var* v = t->as_var()) {
        if (std::find(seen.begin(), seen.end(), v->name) != seen.end()) return false;
        seen.push_back(v->name);
        return true;
    }
    for (const auto& a : t->args()) {
        if (!linear_walk(a, seen)) return false;
    }
    return true;
}
} // namespace

bool is_linear(const TermPtr& t) {
    std::vector<std::string> seen;
    return linear_walk(t, seen);
}

TermPtr apply_subst(const TermPtr& t, const Subst& s) {
    if (const Var* v = t->as_var()) {
        auto it = s.find(v->name);
        return it == s.end() ? t : it->second;
    }
    if (t->args().empty()) return t;
    bool changed = false;
    std::vector<TermPtr> new_args;
    new_args.reserve(t->args().size());
    for (const auto& a : t->args()) {
        new_args.push_back(apply_subst(a, s));
        if (new_args.back().get() != a.get()) changed = true;
    }
    if (!changed) return t;
    if (const Calc* c = t->as_calc()) return mk_calc(c->op, std::move(new_args));
    const App* a = t->as_app();
    return mk_app(a->symbol, a->sort, std::move(new_args));
}

TermPtr rename_vars(const TermPtr& t, const std::map<std::string, std::string>& renaming) {
    if (const Var* v = t->as_var()) {
        auto it = renaming.find(v->name);
        return it == renaming.end() ? t : mk_var(it->second, v->sort);
    }
    if (t->args().empty()) return t;
    std::vector<TermPtr> new_args;
    new_args.reserve(t->args().size());
    for (const auto& a : t->args()) new_args.push_back(rename_vars(a, renaming));
    if (const Calc* c = t->as_calc()) return mk_calc(c->op, std::move(new_args));
    const App* a = t->as_app();
    return mk_app(a->symbol, a->sort, std::move(new_args));
}

} // namespace s2l::lctrs

#include "s2l/interp.hpp"

#include "s2l/pretty.hpp"
#include "s2l/theory.hpp"

namespace s2l::interp {

using namespace syntax;

namespace {

std::int64_t lookup(const Assignment& sigma, const std::string& name) {
    auto it = sigma.find(name);
    if (it == sigma.end()) throw EvalError("unbound variable " + name);
    return it->second;
}

// Globals plus locals, locals shadowing; validated programs keep the two
// domains disjoint so shadowing never actually happens.
struct Env {
    const Assignment& globals;
    const Assignment& locals;
    std::int64_t get(const std::string& name) const {
        auto it = locals.find(name);
        if (it != locals.end()) return it->second;
        return lookup(globals, name);
    }
};

std::int64_t eval_int_env(const IntExprPtr& e, const Env& env) {
    if (const IntLit* l = std::get_if<IntLit>(&e->node)) return l->value;
    if (const VarRef* v = std::get_if<VarRef>(&e->node)) return env.get(v->name);
    const IntBin& b = std::get<IntBin>(e->node);
    std::int64_t x = eval_int_env(b.lhs, env);
    std::int64_t y = eval_int_env(b.rhs, env);
    switch (b.op) {
    case IntOp::Add: return lctrs::checked_add(x, y);
    case IntOp::Sub: return lctrs::checked_sub(x, y);
    case IntOp::Mul: return lctrs::checked_mul(x, y);
    }
    throw EvalError("unknown operator");
}

bool eval_bool_env(const BoolExprPtr& e, const Env& env) {
    if (const BoolLit* l = std::get_if<BoolLit>(&e->node)) return l->value;
    if (const Cmp* c = std::get_if<Cmp>(&e->node)) {
        std::int64_t x = eval_int_env(c->lhs, env);
        std::int64_t y = eval_int_env(c->rhs, env);
        return c->op == CmpOp::Eq ? x == y : x < y;
    }
    if (const Not* n = std::get_if<Not>(&e->node)) return !eval_bool_env(n->arg, env);
    const Or& o = std::get<Or>(e->node);
    // inclusive or; both sides are pure, so short-circuiting is unobservable
    return eval_bool_env(o.lhs, env) || eval_bool_env(o.rhs, env);
}

struct OutOfFuel {
    std::uint64_t steps;
};

class Machine {
public:
    Machine(const Program& p, const ExecOptions& opts) : p_(p), opts_(opts) {}

    std::uint64_t steps() const { return steps_; }

    // Runs one statement sequence (one frame's code); globals are shared
    // across frames, locals belong to the frame.
    void run_seq(const StmtSeq& seq, Assignment& globals, Assignment& locals, int depth) {
        for (const Stmt& s : seq) run_stmt(s, globals, locals, depth);
    }

    // The empty-sequence rule: fires when a frame's code is exhausted.
    void charge_halt(const Assignment& globals, const Assignment& locals, int depth) {
        charge("empty", "", globals, locals, depth);
    }

private:
    void charge(const char* rule, const std::string& stmt, const Assignment& globals,
                const Assignment& locals, int depth) {
        if (steps_ == opts_.fuel) throw OutOfFuel{steps_};
        ++steps_;
        if (opts_.observer) opts_.observer->on_rule(rule, stmt, depth, globals, locals);
    }

    static std::string stmt_head(const Stmt& s) {
        if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node)) {
            return "int " + d->name + " = " + std::to_string(d->init) + ";";
        }
        if (const Assign* a = std::get_if<Assign>(&s.node)) {
            return a->name + " = " + pretty(a->value) + ";";
        }
        if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
            std::string out = c->name + " = " + c->callee + "(";
            for (size_t i = 0; i < c->args.size(); ++i) {
                if (i) out += ", ";
                out += pretty(c->args[i]);
            }
            return out + ");";
        }
        if (const If* f = std::get_if<If>(&s.node)) {
            return "if (" + pretty(f->cond) + ")";
        }
        return "while (" + pretty(std::get<While>(s.node).cond) + ")";
    }

    void run_stmt(const Stmt& s, Assignment& globals, Assignment& locals, int depth) {
        Env env{globals, locals};
        if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node)) {
            charge("declare", stmt_head(s), globals, locals, depth);
            locals[d->name] = d->init;
            return;
        }
        if (const Assign* a = std::get_if<Assign>(&s.node)) {
            bool global = !locals.count(a->name) && globals.count(a->name);
            charge(global ? "assign-global" : "assign-local", stmt_head(s), globals, locals,
                   depth);
            std::int64_t v = eval_int_env(a->value, env);
            (global ? globals : locals)[a->name] = v;
            return;
        }
        if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
            charge("call", stmt_head(s), globals, locals, depth);
            const FunDef* callee = p_.find_function(c->callee);
            if (!callee || callee->params.size() != c->args.size()) {
                throw EvalError("bad call to " + c->callee);
            }
            if (depth >= opts_.max_call_depth) throw OutOfFuel{steps_};
            Assignment callee_locals;
            for (size_t i = 0; i < c->args.size(); ++i) {
                callee_locals[callee->params[i]] = eval_int_env(c->args[i], env);
            }
            run_seq(callee->body, globals, callee_locals, depth + 1);
            charge_halt(globals, callee_locals, depth + 1);
            std::int64_t ret = eval_int_env(callee->return_expr, Env{globals, callee_locals});
            bool global = !locals.count(c->name) && globals.count(c->name);
            (global ? globals : locals)[c->name] = ret;
            return;
        }
        if (const If* f = std::get_if<If>(&s.node)) {
            bool verdict = eval_bool_env(f->cond, env);
            charge(verdict ? "if-true" : "if-false", stmt_head(s), globals, locals, depth);
            run_seq(verdict ? f->then_body : f->else_body, globals, locals, depth);
            return;
        }
        const While& w = std::get<While>(s.node);
        while (true) {
            bool verdict = eval_bool_env(w.cond, Env{globals, locals});
            charge(verdict ? "while-true" : "while-false", stmt_head(s), globals, locals,
                   depth);
            if (!verdict) return;
            run_seq(w.body, globals, locals, depth);
        }
    }

    const Program& p_;
    const ExecOptions& opts_;
    std::uint64_t steps_ = 0;
};

} // namespace

std::int64_t eval_int(const IntExprPtr& e, const Assignment& sigma) {
    static const Assignment empty;
    return eval_int_env(e, Env{sigma, empty});
}

bool eval_bool(const BoolExprPtr& e, const Assignment& sigma) {
    static const Assignment empty;
    return eval_bool_env(e, Env{sigma, empty});
}

ExecOutcome exec(const Configuration& c, const Program& p, const ExecOptions& opts) {
    Machine m(p, opts);
    Assignment globals = c.globals;
    Assignment locals = c.locals;
    try {
        m.run_seq(c.code, globals, locals, 0);
        m.charge_halt(globals, locals, 0);
    } catch (const OutOfFuel& f) {
        return FuelExhausted{f.steps};
    }
    return Halted{std::move(globals), std::move(locals), m.steps()};
}

RunOutcome run_program(const Program& p, std::uint64_t fuel, Observer* observer) {
    const FunDef* main_fn = p.find_function("main");
    if (!main_fn || !main_fn->params.empty()) {
        throw EvalError("program has no zero-parameter main");
    }
    // the entry configuration runs `ret = main();` with one fresh local
    Configuration c;
    c.code.push_back(
        {CallAssign{"$ret", "main", {}}, SourceLoc{}});
    for (const Global& g : p.globals) c.globals[g.name] = g.init;
    c.locals["$ret"] = 0;
    ExecOptions opts;
    opts.fuel = fuel;
    opts.observer = observer;
    ExecOutcome out = exec(c, p, opts);
    if (const FuelExhausted* fe = std::get_if<FuelExhausted>(&out)) return *fe;
    Halted& h = std::get<Halted>(out);
    return RunResult{h.locals.at("$ret"), std::move(h.globals), h.steps};
}

} // namespace s2l::interp

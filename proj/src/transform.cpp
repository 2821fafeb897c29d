#include "s2l/transform.hpp"

#include "s2l/diag.hpp"

#include <set>
#include <string>

namespace s2l::trans {

using namespace s2l::lctrs;
using syntax::Program;

namespace {

// Walks a validated program and accumulates the rewriting system. One point
// counter is shared by all functions, so every program point in the whole
// program gets a distinct u-symbol.
class Translator {
public:
    Translator(const Program& p, const TransOptions& opts) : prog_(p), opts_(opts) {
        for (const auto& g : p.globals) {
            globals_.push_back(g.name);
            global_set_.insert(g.name);
        }
        std::set<std::string> used;
        for (const auto& g : p.globals) used.insert(g.name);
        for (const auto& fn : p.functions) {
            used.insert(fn.name);
            for (const auto& prm : fn.params) used.insert(prm);
            collect_locals(fn.body, used);
        }
        stack_var_ = fresh_name("s", used);
        ret_var_ = fresh_name("y", used);
    }

    Lctrs run() {
        sys_.add_sort(sort_int);
        sys_.add_sort(sort_bool);
        sys_.add_sort(sort_state);
        sys_.add_sort(sort_env);
        sys_.add_sort(sort_process);

        std::vector<Sort> env_args(globals_.size(), sort_int);
        env_args.push_back(sort_process);
        sys_.add_symbol({"env", env_args, sort_env});
        sys_.add_symbol({"stack", {sort_state, sort_process}, sort_process});
        sys_.add_symbol({"bot", {}, sort_process});
        sys_.add_symbol({"return", {sort_int}, sort_state});
        for (const auto& fn : prog_.functions)
            sys_.add_symbol({fn.name, std::vector<Sort>(fn.params.size(), sort_int), sort_state});

        for (const auto& fn : prog_.functions) trans_fun(fn);
        sys_.normalize();
        return std::move(sys_);
    }

private:
    struct Frame {
        std::vector<std::string> params;
        std::vector<std::string> locals;
        std::string head;
    };

    static void collect_locals(const syntax::StmtSeq& seq, std::set<std::string>& out) {
        for (const auto& st : seq) {
            if (const auto* d = std::get_if<syntax::LocalDecl>(&st.node)) {
                out.insert(d->name);
            } else if (const auto* i = std::get_if<syntax::If>(&st.node)) {
                collect_locals(i->then_body, out);
                collect_locals(i->else_body, out);
            } else if (const auto* w = std::get_if<syntax::While>(&st.node)) {
                collect_locals(w->body, out);
            }
        }
    }

    static std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
        if (!used.count(base)) return base;
        for (int i = 1;; ++i) {
            std::string cand = base + std::to_string(i);
            if (!used.count(cand)) return cand;
        }
    }

    // --- term building -----------------------------------------------------

    static TermPtr ivar(const std::string& n) { return mk_var(n, sort_int); }

    std::vector<TermPtr> frame_args(const Frame& f) const {
        std::vector<TermPtr> args;
        for (const auto& p : f.params) args.push_back(ivar(p));
        for (const auto& z : f.locals) args.push_back(ivar(z));
        return args;
    }

    TermPtr head_term(const std::string& sym, const Frame& f) const {
        return mk_app(sym, sort_state, frame_args(f));
    }

    TermPtr head_term(const std::string& sym, const std::vector<std::string>& params,
                      const std::vector<std::string>& locals) const {
        Frame f{params, locals, sym};
        return head_term(sym, f);
    }

    // Index of v in the frame's argument list, or -1 if v is not a frame var.
    static int frame_index(const Frame& f, const std::string& v) {
        for (size_t i = 0; i < f.params.size(); ++i)
            if (f.params[i] == v) return static_cast<int>(i);
        for (size_t i = 0; i < f.locals.size(); ++i)
            if (f.locals[i] == v) return static_cast<int>(f.params.size() + i);
        return -1;
    }

    int global_index(const std::string& v) const {
        for (size_t i = 0; i < globals_.size(); ++i)
            if (globals_[i] == v) return static_cast<int>(i);
        return -1;
    }

    std::vector<TermPtr> global_vars() const {
        std::vector<TermPtr> args;
        for (const auto& g : globals_) args.push_back(ivar(g));
        return args;
    }

    TermPtr int_term(const syntax::IntExprPtr& e) const {
        if (const auto* l = std::get_if<syntax::IntLit>(&e->node)) return mk_int(l->value);
        if (const auto* v = std::get_if<syntax::VarRef>(&e->node)) return ivar(v->name);
        const auto& b = std::get<syntax::IntBin>(e->node);
        TheoryOp op = b.op == syntax::IntOp::Add   ? TheoryOp::Add
                      : b.op == syntax::IntOp::Sub ? TheoryOp::Sub
                                                   : TheoryOp::Mul;
        return mk_calc(op, {int_term(b.lhs), int_term(b.rhs)});
    }

    TermPtr bool_term(const syntax::BoolExprPtr& e) const {
        if (const auto* l = std::get_if<syntax::BoolLit>(&e->node)) return mk_bool(l->value);
        if (const auto* c = std::get_if<syntax::Cmp>(&e->node)) {
            TheoryOp op = c->op == syntax::CmpOp::Eq ? TheoryOp::Eq : TheoryOp::Lt;
            return mk_calc(op, {int_term(c->lhs), int_term(c->rhs)});
        }
        if (const auto* n = std::get_if<syntax::Not>(&e->node))
            return mk_calc(TheoryOp::Not, {bool_term(n->arg)});
        const auto& o = std::get<syntax::Or>(e->node);
        return mk_calc(TheoryOp::Or, {bool_term(o.lhs), bool_term(o.rhs)});
    }

    bool reads_global(const syntax::IntExprPtr& e) const {
        for (const auto& n : syntax::vars_read(e))
            if (global_set_.count(n)) return true;
        return false;
    }

    bool reads_global(const syntax::BoolExprPtr& e) const {
        std::vector<std::string> vs;
        syntax::collect_vars_read(e, vs);
        for (const auto& n : vs)
            if (global_set_.count(n)) return true;
        return false;
    }

    // --- rule emission -----------------------------------------------------

    TermPtr wrap_stack(const TermPtr& state) const {
        return mk_app("stack", sort_process, {state, mk_var(stack_var_, sort_process)});
    }

    TermPtr wrap_env(const TermPtr& proc, const std::vector<TermPtr>* genv = nullptr) const {
        std::vector<TermPtr> args = genv ? *genv : global_vars();
        args.push_back(proc);
        return mk_app("env", sort_env, args);
    }

    // A rule between two state heads. Without the env context it is emitted
    // as-is; with it, both sides are placed on top of the stack inside env,
    // and genv (if given) supplies the updated global slots on the right.
    ConstrainedRule state_rule(TermPtr l, TermPtr r, TermPtr c, bool wrap,
                               const std::vector<TermPtr>* genv = nullptr) const {
        if (!wrap) return {std::move(l), std::move(r), std::move(c)};
        return {wrap_env(wrap_stack(l)), wrap_env(wrap_stack(r), genv), std::move(c)};
    }

    std::string fresh_u(const Frame& f) {
        std::string name = "u" + std::to_string(counter_++);
        size_t arity = f.params.size() + f.locals.size();
        sys_.add_symbol({name, std::vector<Sort>(arity, sort_int), sort_state});
        return name;
    }

    // --- statement translation ----------------------------------------------

    void trans_seq(Frame& f, const syntax::StmtSeq& seq, std::vector<ConstrainedRule>& out) {
        for (const auto& st : seq) trans_stmt(f, st, out);
    }

    void trans_stmt(Frame& f, const syntax::Stmt& st, std::vector<ConstrainedRule>& out) {
        if (const auto* d = std::get_if<syntax::LocalDecl>(&st.node)) {
            trans_decl(f, *d, out);
        } else if (const auto* a = std::get_if<syntax::Assign>(&st.node)) {
            trans_assign(f, *a, out);
        } else if (const auto* c = std::get_if<syntax::CallAssign>(&st.node)) {
            trans_call(f, *c, out);
        } else if (const auto* i = std::get_if<syntax::If>(&st.node)) {
            trans_if(f, *i, out);
        } else {
            trans_while(f, std::get<syntax::While>(st.node), out);
        }
    }

    void trans_decl(Frame& f, const syntax::LocalDecl& d, std::vector<ConstrainedRule>& out) {
        TermPtr lhs = head_term(f.head, f);
        std::vector<TermPtr> rargs = frame_args(f);
        rargs.push_back(mk_int(d.init));
        f.locals.push_back(d.name);
        std::string u = fresh_u(f);
        out.push_back({lhs, mk_app(u, sort_state, rargs), mk_bool(true)});
        f.head = u;
    }

    void trans_assign(Frame& f, const syntax::Assign& a, std::vector<ConstrainedRule>& out) {
        TermPtr e = int_term(a.value);
        bool v_global = global_set_.count(a.name) && frame_index(f, a.name) < 0;
        bool wrap = v_global || reads_global(a.value);
        if (opts_.mutation == Mutation::DropEnvWrapper) wrap = false;

        std::string u = fresh_u(f);
        std::vector<TermPtr> rargs = frame_args(f);
        std::vector<TermPtr> genv;
        const std::vector<TermPtr>* genv_ptr = nullptr;
        if (v_global) {
            if (wrap) {
                genv = global_vars();
                genv[global_index(a.name)] = e;
                genv_ptr = &genv;
            }
        } else {
            rargs[frame_index(f, a.name)] = e;
        }
        out.push_back(state_rule(head_term(f.head, f), mk_app(u, sort_state, rargs),
                                 mk_bool(true), wrap, genv_ptr));
        f.head = u;
    }

    void trans_call(Frame& f, const syntax::CallAssign& c, std::vector<ConstrainedRule>& out) {
        std::string cap = fresh_u(f);  // frame pushed below the callee
        std::string cont = fresh_u(f); // point after the call returns

        bool args_global = false;
        std::vector<TermPtr> callee_args;
        for (const auto& arg : c.args) {
            args_global = args_global || reads_global(arg);
            callee_args.push_back(int_term(arg));
        }

        TermPtr push_l = wrap_stack(head_term(f.head, f));
        TermPtr push_r = mk_app(
            "stack", sort_process,
            {mk_app(c.callee, sort_state, callee_args), wrap_stack(head_term(cap, f))});
        if (args_global || opts_.constructor_stack) {
            push_l = wrap_env(push_l);
            push_r = wrap_env(push_r);
        }
        out.push_back({push_l, push_r, mk_bool(true)});

        TermPtr ret = ivar(ret_var_);
        TermPtr pop_l = mk_app("stack", sort_process,
                               {mk_app("return", sort_state, {ret}), wrap_stack(head_term(cap, f))});
        bool v_global = global_set_.count(c.name) && frame_index(f, c.name) < 0;
        std::vector<TermPtr> cont_args = frame_args(f);
        if (!v_global && opts_.mutation != Mutation::OmitPopSubstitution)
            cont_args[frame_index(f, c.name)] = ret;
        TermPtr pop_r = wrap_stack(mk_app(cont, sort_state, cont_args));
        if (v_global || opts_.constructor_stack) {
            std::vector<TermPtr> genv = global_vars();
            if (v_global && opts_.mutation != Mutation::OmitPopSubstitution)
                genv[global_index(c.name)] = ret;
            pop_l = wrap_env(pop_l);
            pop_r = wrap_env(pop_r, &genv);
        }
        out.push_back({pop_l, pop_r, mk_bool(true)});
        f.head = cont;
    }

    void trans_if(Frame& f, const syntax::If& s, std::vector<ConstrainedRule>& out) {
        TermPtr phi = bool_term(s.cond);
        TermPtr nphi = mk_calc(TheoryOp::Not, {phi});
        bool wrap = reads_global(s.cond);
        std::string g = f.head;
        std::vector<std::string> base = f.locals;

        std::string then_head = fresh_u(f);
        f.head = then_head;
        std::vector<ConstrainedRule> then_rules;
        trans_seq(f, s.then_body, then_rules);
        std::string then_end = f.head;
        std::vector<std::string> then_locals = f.locals;

        f.locals = base;
        std::string else_head = fresh_u(f);
        f.head = else_head;
        std::vector<ConstrainedRule> else_rules;
        trans_seq(f, s.else_body, else_rules);
        std::string else_end = f.head;
        std::vector<std::string> else_locals = f.locals;

        f.locals = base;
        std::string join = fresh_u(f);

        TermPtr c_then = phi;
        TermPtr c_else = nphi;
        if (opts_.mutation == Mutation::SwapIfConstraints) std::swap(c_then, c_else);

        out.push_back(state_rule(head_term(g, f.params, base),
                                 head_term(then_head, f.params, base), c_then, wrap));
        out.push_back(state_rule(head_term(g, f.params, base),
                                 head_term(else_head, f.params, base), c_else, wrap));
        for (auto& r : then_rules) out.push_back(std::move(r));
        out.push_back({head_term(then_end, f.params, then_locals),
                       head_term(join, f.params, base), mk_bool(true)});
        for (auto& r : else_rules) out.push_back(std::move(r));
        out.push_back({head_term(else_end, f.params, else_locals),
                       head_term(join, f.params, base), mk_bool(true)});
        f.head = join;
    }

    void trans_while(Frame& f, const syntax::While& s, std::vector<ConstrainedRule>& out) {
        TermPtr phi = bool_term(s.cond);
        TermPtr nphi = mk_calc(TheoryOp::Not, {phi});
        bool wrap = reads_global(s.cond);
        std::string g = f.head;
        std::vector<std::string> base = f.locals;

        std::string body_head = fresh_u(f);
        f.head = body_head;
        std::vector<ConstrainedRule> body_rules;
        trans_seq(f, s.body, body_rules);
        std::string body_end = f.head;
        std::vector<std::string> body_locals = f.locals;

        f.locals = base;
        std::string exit_head = fresh_u(f);

        out.push_back(state_rule(head_term(g, f.params, base),
                                 head_term(body_head, f.params, base), phi, wrap));
        out.push_back(state_rule(head_term(g, f.params, base),
                                 head_term(exit_head, f.params, base), nphi, wrap));
        for (auto& r : body_rules) out.push_back(std::move(r));
        // Loop back to the test point, dropping the body's locals.
        out.push_back({head_term(body_end, f.params, body_locals),
                       head_term(g, f.params, base), mk_bool(true)});
        f.head = exit_head;
    }

    void trans_fun(const syntax::FunDef& fn) {
        Frame f{fn.params, {}, fn.name};
        std::vector<ConstrainedRule> out;
        trans_seq(f, fn.body, out);
        bool wrap = reads_global(fn.return_expr);
        TermPtr rhs = mk_app("return", sort_state, {int_term(fn.return_expr)});
        out.push_back(state_rule(head_term(f.head, f), rhs, mk_bool(true), wrap));
        for (auto& r : out) sys_.rules.push_back(std::move(r));
    }

    const Program& prog_;
    TransOptions opts_;
    Lctrs sys_;
    std::vector<std::string> globals_;
    std::set<std::string> global_set_;
    int counter_ = 1;
    std::string stack_var_;
    std::string ret_var_;
};

} // namespace

Lctrs conv(const Program& p, const TransOptions& opts) {
    return Translator(p, opts).run();
}

TermPtr initial_term(const Program& p) {
    std::vector<TermPtr> args;
    for (const auto& g : p.globals) args.push_back(mk_int(g.init));
    args.push_back(mk_app("stack", sort_process,
                          {mk_app("main", sort_state, {}), mk_app("bot", sort_process, {})}));
    return mk_app("env", sort_env, args);
}

TermPtr final_term(const std::vector<std::int64_t>& globals, std::int64_t ret) {
    std::vector<TermPtr> args;
    for (auto g : globals) args.push_back(mk_int(g));
    args.push_back(mk_app(
        "stack", sort_process,
        {mk_app("return", sort_state, {mk_int(ret)}), mk_app("bot", sort_process, {})}));
    return mk_app("env", sort_env, args);
}

} // namespace s2l::trans

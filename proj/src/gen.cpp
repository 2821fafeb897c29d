#include "s2l/gen.hpp"

#include <set>
#include <string>
#include <vector>

namespace s2l::gen {

using namespace syntax;

namespace {

class Generator {
public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

    Program run() {
        for (int i = 1; i <= cfg_.globals; ++i) {
            std::string name = "g" + std::to_string(i);
            prog_.globals.push_back({name, rng_.range(-4, 4), {}});
            globals_.push_back(name);
        }
        int nfun = cfg_.max_functions > 0 && cfg_.max_stmts > 0
                       ? static_cast<int>(rng_.below(cfg_.max_functions + 1))
                       : 0;
        for (int i = 1; i <= nfun; ++i) gen_function(i);
        gen_main();
        return std::move(prog_);
    }

private:
    struct Scope {
        std::vector<std::string> vars;        // params and live locals
        std::set<std::string> frozen;         // loop counters / recursion parameter
        int fun_index = 0;                    // 0 = main
        bool recursed = false;                // one guarded self-call per function
    };

    std::string fresh_local() { return "v" + std::to_string(++local_counter_); }

    // --- expressions --------------------------------------------------------

    IntExprPtr gen_int_expr(const Scope& sc, int depth) {
        bool leaf = depth <= 0 || rng_.below(5) < 2;
        if (leaf) {
            size_t nvars = sc.vars.size() + globals_.size();
            if (nvars > 0 && rng_.below(2) == 0) {
                size_t k = rng_.below(nvars);
                const std::string& name =
                    k < sc.vars.size() ? sc.vars[k] : globals_[k - sc.vars.size()];
                return mk_var_ref(name);
            }
            return mk_int_lit(rng_.range(-8, 8));
        }
        IntOp op;
        switch (rng_.below(cfg_.allow_mul ? 3 : 2)) {
        case 0: op = IntOp::Add; break;
        case 1: op = IntOp::Sub; break;
        default: op = IntOp::Mul; break;
        }
        return mk_int_bin(op, gen_int_expr(sc, depth - 1), gen_int_expr(sc, depth - 1));
    }

    BoolExprPtr gen_bool_expr(const Scope& sc, int depth) {
        if (depth <= 0 || rng_.below(5) < 3) {
            CmpOp op = rng_.below(2) == 0 ? CmpOp::Lt : CmpOp::Eq;
            return mk_cmp(op, gen_int_expr(sc, 1), gen_int_expr(sc, 1));
        }
        if (rng_.below(2) == 0) return mk_not(gen_bool_expr(sc, depth - 1));
        return mk_or(gen_bool_expr(sc, depth - 1), gen_bool_expr(sc, depth - 1));
    }

    // A variable that may be assigned: a global or a non-frozen scope var.
    // Globals are picked often so that lost global updates surface quickly.
    std::string pick_target(const Scope& sc) {
        std::vector<std::string> locals;
        for (const std::string& v : sc.vars)
            if (!sc.frozen.count(v)) locals.push_back(v);
        bool want_global = !globals_.empty() && (locals.empty() || rng_.below(5) < 2);
        if (want_global) return globals_[rng_.below(globals_.size())];
        if (locals.empty()) return "";
        return locals[rng_.below(locals.size())];
    }

    // --- statements ---------------------------------------------------------

    void gen_block(Scope& sc, StmtSeq& out, int depth) {
        int n = static_cast<int>(rng_.below(cfg_.max_stmts + 1));
        for (int i = 0; i < n; ++i) gen_stmt(sc, out, depth);
    }

    void gen_stmt(Scope& sc, StmtSeq& out, int depth) {
        int pick = static_cast<int>(rng_.below(100));
        if (pick < 20) {
            std::string v = fresh_local();
            out.push_back({LocalDecl{v, rng_.range(-8, 8)}, {}});
            sc.vars.push_back(v);
            return;
        }
        if (pick < 50) {
            std::string t = pick_target(sc);
            if (t.empty()) {
                std::string v = fresh_local();
                out.push_back({LocalDecl{v, rng_.range(-8, 8)}, {}});
                sc.vars.push_back(v);
                t = v;
            }
            out.push_back({Assign{t, gen_int_expr(sc, cfg_.max_expr_depth)}, {}});
            return;
        }
        if (pick < 62 && depth < 2) { // if
            BoolExprPtr cond = gen_bool_expr(sc, 1);
            Scope then_sc = sc;
            StmtSeq then_body;
            gen_block(then_sc, then_body, depth + 1);
            Scope else_sc = sc;
            StmtSeq else_body;
            gen_block(else_sc, else_body, depth + 1);
            out.push_back({If{cond, std::move(then_body), std::move(else_body)}, {}});
            return;
        }
        if (pick < 74 && depth < 2) { // bounded while
            std::string c = fresh_local();
            out.push_back({LocalDecl{c, rng_.range(0, 5)}, {}});
            sc.vars.push_back(c);
            Scope body_sc = sc;
            body_sc.frozen.insert(c);
            StmtSeq body;
            gen_block(body_sc, body, depth + 1);
            body.push_back(
                {Assign{c, mk_int_bin(IntOp::Sub, mk_var_ref(c), mk_int_lit(1))}, {}});
            out.push_back({While{mk_cmp(CmpOp::Lt, mk_int_lit(0), mk_var_ref(c)), body}, {}});
            sc.frozen.insert(c); // keep the counter read-only afterwards too
            return;
        }
        if (pick < 87 && sc.fun_index >= 1 && !sc.recursed && depth < 2) {
            gen_self_recursion(sc, out, depth);
            return;
        }
        if (callee_count(sc) > 0) { // plain call to an earlier function
            int callee = 1 + static_cast<int>(rng_.below(callee_count(sc)));
            emit_call(sc, out, "f" + std::to_string(callee), param_count_[callee - 1]);
            return;
        }
        // fall back to a declaration
        std::string v = fresh_local();
        out.push_back({LocalDecl{v, rng_.range(-8, 8)}, {}});
        sc.vars.push_back(v);
    }

    // Number of functions callable from this scope without creating a cycle:
    // fi may call f1..f(i-1); main may call all of them.
    size_t callee_count(const Scope& sc) const {
        if (sc.fun_index == 0) return param_count_.size();
        return static_cast<size_t>(sc.fun_index - 1);
    }

    void emit_call(Scope& sc, StmtSeq& out, const std::string& callee, int arity) {
        std::string t = pick_target(sc);
        if (t.empty()) {
            std::string v = fresh_local();
            out.push_back({LocalDecl{v, 0}, {}});
            sc.vars.push_back(v);
            t = v;
        }
        std::vector<IntExprPtr> args;
        for (int i = 0; i < arity; ++i) args.push_back(gen_int_expr(sc, 1));
        out.push_back({CallAssign{t, callee, std::move(args)}, {}});
    }

    // if (a1 <= 0) { ... } else { t = fi(a1 - 1, ...); ... }
    // The first parameter is frozen, so the argument strictly decreases and
    // the recursion bottoms out.
    void gen_self_recursion(Scope& sc, StmtSeq& out, int depth) {
        sc.recursed = true;
        const std::string& rec = sc.vars[0]; // a1, frozen at function entry
        BoolExprPtr cond = mk_not(mk_cmp(CmpOp::Lt, mk_int_lit(0), mk_var_ref(rec)));

        Scope then_sc = sc;
        StmtSeq then_body;
        gen_block(then_sc, then_body, depth + 1);

        Scope else_sc = sc;
        StmtSeq else_body;
        std::string t = fresh_local();
        else_body.push_back({LocalDecl{t, 0}, {}});
        else_sc.vars.push_back(t);
        std::vector<IntExprPtr> args;
        args.push_back(mk_int_bin(IntOp::Sub, mk_var_ref(rec), mk_int_lit(1)));
        for (int i = 1; i < param_count_[sc.fun_index - 1]; ++i)
            args.push_back(gen_int_expr(else_sc, 1));
        else_body.push_back(
            {CallAssign{t, "f" + std::to_string(sc.fun_index), std::move(args)}, {}});
        gen_block(else_sc, else_body, depth + 1);

        out.push_back({If{cond, std::move(then_body), std::move(else_body)}, {}});
    }

    // --- functions ----------------------------------------------------------

    void gen_function(int index) {
        FunDef fn;
        fn.name = "f" + std::to_string(index);
        int arity = 1 + static_cast<int>(rng_.below(2));
        param_count_.push_back(arity);
        Scope sc;
        sc.fun_index = index;
        for (int i = 1; i <= arity; ++i) {
            fn.params.push_back("a" + std::to_string(i));
            sc.vars.push_back(fn.params.back());
        }
        sc.frozen.insert(fn.params[0]); // keeps self-recursion well-founded
        gen_block(sc, fn.body, 0);
        fn.return_expr = gen_int_expr(sc, cfg_.max_expr_depth);
        prog_.functions.push_back(std::move(fn));
    }

    void gen_main() {
        FunDef fn;
        fn.name = "main";
        Scope sc;
        sc.fun_index = 0;
        if (cfg_.max_stmts == 0) { // degenerate size: a bare return
            fn.return_expr = gen_int_expr(sc, cfg_.max_expr_depth);
            prog_.functions.push_back(std::move(fn));
            return;
        }
        gen_block(sc, fn.body, 0);

        // Fold everything observable into the return value.
        std::string acc = fresh_local();
        fn.body.push_back({LocalDecl{acc, 0}, {}});
        IntExprPtr sum = mk_var_ref(acc);
        for (const std::string& v : sc.vars) sum = mk_int_bin(IntOp::Add, sum, mk_var_ref(v));
        for (const std::string& g : globals_) sum = mk_int_bin(IntOp::Add, sum, mk_var_ref(g));
        fn.body.push_back({Assign{acc, sum}, {}});
        fn.return_expr = mk_var_ref(acc);
        prog_.functions.push_back(std::move(fn));
    }

    GenConfig cfg_;
    SplitMix64 rng_;
    Program prog_;
    std::vector<std::string> globals_;
    std::vector<int> param_count_; // arity of f1, f2, ...
    int local_counter_ = 0;
};

} // namespace

Program gen_program(const GenConfig& cfg) { return Generator(cfg).run(); }

} // namespace s2l::gen

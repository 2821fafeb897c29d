#include "s2l/difftest.hpp"

#include "s2l/diag.hpp"
#include "s2l/engine.hpp"
#include "s2l/format.hpp"
#include "s2l/interp.hpp"
#include "s2l/pretty.hpp"
#include "s2l/validate.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace s2l::difftest {

using namespace syntax;

const char* verdict_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::Agree: return "agree";
    case VerdictKind::Disagree: return "disagree";
    default: return "inconclusive";
    }
}

const char* mutation_name(trans::Mutation m) {
    switch (m) {
    case trans::Mutation::None: return "none";
    case trans::Mutation::DropEnvWrapper: return "drop-env";
    case trans::Mutation::SwapIfConstraints: return "swap-if";
    default: return "omit-pop";
    }
}

trans::Mutation mutation_from_name(const std::string& name) {
    if (name == "none") return trans::Mutation::None;
    if (name == "drop-env") return trans::Mutation::DropEnvWrapper;
    if (name == "swap-if") return trans::Mutation::SwapIfConstraints;
    if (name == "omit-pop") return trans::Mutation::OmitPopSubstitution;
    throw Error("unknown mutation " + name +
                " (expected none, drop-env, swap-if or omit-pop)");
}

namespace {

// Every big-step interpreter rule corresponds to one rule step plus a
// handful of calculation steps (bounded by the statement's expression
// size), so once the interpreter has halted in n steps a generous multiple
// of n bounds the faithful rewrite. A mutated system may instead diverge,
// growing the stack spine without bound and making each further step more
// expensive; the cap keeps such runs cheap and reports them as
// inconclusive.
std::uint64_t rewrite_budget(std::uint64_t interp_steps) {
    return interp_steps * 8 + 1024;
}

} // namespace

Verdict check_program(const Program& p, const trans::TransOptions& topts,
                      std::uint64_t fuel) {
    interp::RunOutcome out;
    try {
        out = interp::run_program(p, fuel);
    } catch (const EvalError& e) {
        return {VerdictKind::Inconclusive, std::string("interpreter: ") + e.what(), 0, 0};
    }
    if (const interp::FuelExhausted* fe = std::get_if<interp::FuelExhausted>(&out))
        return {VerdictKind::Inconclusive, "interpreter ran out of fuel", fe->steps, 0};
    const interp::RunResult& r = std::get<interp::RunResult>(out);

    std::vector<std::int64_t> gvals;
    for (const Global& g : p.globals) gvals.push_back(r.globals.at(g.name));
    lctrs::TermPtr want = trans::final_term(gvals, r.ret);

    lctrs::Lctrs sys = trans::conv(p, topts);
    lctrs::RewriteResult res;
    try {
        res = lctrs::rewrite_to_nf(trans::initial_term(p), sys, rewrite_budget(r.steps));
    } catch (const EngineError& e) {
        return {VerdictKind::Disagree, std::string("engine: ") + e.what(), r.steps, 0};
    } catch (const EvalError& e) {
        return {VerdictKind::Disagree, std::string("calculation: ") + e.what(), r.steps, 0};
    }
    if (res.status == lctrs::RewriteStatus::FuelExhausted)
        return {VerdictKind::Inconclusive, "rewriting ran out of fuel", r.steps, res.steps};
    if (lctrs::term_eq(res.term, want)) return {VerdictKind::Agree, "", r.steps, res.steps};
    return {VerdictKind::Disagree,
            "rewriting reached " + lctrs::term_to_string(res.term) +
                " but the interpreter gives " + lctrs::term_to_string(want),
            r.steps, res.steps};
}

// --- shrinking ---------------------------------------------------------------

namespace {

// Lexicographic size: number of AST nodes, then total literal magnitude.
// Every shrink step strictly decreases it, so minimize terminates.
struct Measure {
    std::uint64_t nodes = 0;
    std::uint64_t lits = 0;
    bool operator<(const Measure& o) const {
        return nodes != o.nodes ? nodes < o.nodes : lits < o.lits;
    }
};

std::uint64_t lit_weight(std::int64_t v) {
    std::uint64_t a = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
    return a > 1024 ? 1024 : a;
}

void measure_expr(const IntExprPtr& e, Measure& m) {
    m.nodes++;
    if (const IntLit* l = std::get_if<IntLit>(&e->node)) {
        m.lits += lit_weight(l->value);
    } else if (const IntBin* b = std::get_if<IntBin>(&e->node)) {
        measure_expr(b->lhs, m);
        measure_expr(b->rhs, m);
    }
}

void measure_expr(const BoolExprPtr& e, Measure& m) {
    m.nodes++;
    if (const Cmp* c = std::get_if<Cmp>(&e->node)) {
        measure_expr(c->lhs, m);
        measure_expr(c->rhs, m);
    } else if (const Not* n = std::get_if<Not>(&e->node)) {
        measure_expr(n->arg, m);
    } else if (const Or* o = std::get_if<Or>(&e->node)) {
        measure_expr(o->lhs, m);
        measure_expr(o->rhs, m);
    }
}

void measure_seq(const StmtSeq& seq, Measure& m) {
    for (const Stmt& s : seq) {
        m.nodes++;
        if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node)) {
            m.lits += lit_weight(d->init);
        } else if (const Assign* a = std::get_if<Assign>(&s.node)) {
            measure_expr(a->value, m);
        } else if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
            for (const IntExprPtr& e : c->args) measure_expr(e, m);
        } else if (const If* f = std::get_if<If>(&s.node)) {
            measure_expr(f->cond, m);
            measure_seq(f->then_body, m);
            measure_seq(f->else_body, m);
        } else if (const While* w = std::get_if<While>(&s.node)) {
            measure_expr(w->cond, m);
            measure_seq(w->body, m);
        }
    }
}

Measure measure(const Program& p) {
    Measure m;
    for (const Global& g : p.globals) {
        m.nodes++;
        m.lits += lit_weight(g.init);
    }
    for (const FunDef& f : p.functions) {
        m.nodes++;
        measure_seq(f.body, m);
        measure_expr(f.return_expr, m);
    }
    return m;
}

void int_variants(const IntExprPtr& e, std::vector<IntExprPtr>& out) {
    if (const IntLit* l = std::get_if<IntLit>(&e->node)) {
        if (l->value != 0) {
            out.push_back(mk_int_lit(0));
            if (l->value > 1 || l->value < -1) out.push_back(mk_int_lit(l->value / 2));
        }
        return;
    }
    if (std::holds_alternative<VarRef>(e->node)) {
        out.push_back(mk_int_lit(0));
        return;
    }
    const IntBin& b = std::get<IntBin>(e->node);
    out.push_back(b.lhs);
    out.push_back(b.rhs);
    std::vector<IntExprPtr> sub;
    int_variants(b.lhs, sub);
    for (const IntExprPtr& v : sub) out.push_back(mk_int_bin(b.op, v, b.rhs));
    sub.clear();
    int_variants(b.rhs, sub);
    for (const IntExprPtr& v : sub) out.push_back(mk_int_bin(b.op, b.lhs, v));
}

void bool_variants(const BoolExprPtr& e, std::vector<BoolExprPtr>& out) {
    if (std::holds_alternative<BoolLit>(e->node)) return;
    out.push_back(mk_bool_lit(true));
    out.push_back(mk_bool_lit(false));
    if (const Cmp* c = std::get_if<Cmp>(&e->node)) {
        std::vector<IntExprPtr> sub;
        int_variants(c->lhs, sub);
        for (const IntExprPtr& v : sub) out.push_back(mk_cmp(c->op, v, c->rhs));
        sub.clear();
        int_variants(c->rhs, sub);
        for (const IntExprPtr& v : sub) out.push_back(mk_cmp(c->op, c->lhs, v));
    } else if (const Not* n = std::get_if<Not>(&e->node)) {
        out.push_back(n->arg);
        std::vector<BoolExprPtr> sub;
        bool_variants(n->arg, sub);
        for (const BoolExprPtr& v : sub) out.push_back(mk_not(v));
    } else if (const Or* o = std::get_if<Or>(&e->node)) {
        out.push_back(o->lhs);
        out.push_back(o->rhs);
        std::vector<BoolExprPtr> sub;
        bool_variants(o->lhs, sub);
        for (const BoolExprPtr& v : sub) out.push_back(mk_or(v, o->rhs));
        sub.clear();
        bool_variants(o->rhs, sub);
        for (const BoolExprPtr& v : sub) out.push_back(mk_or(o->lhs, v));
    }
}

void stmt_variants(const Stmt& s, std::vector<Stmt>& out) {
    if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node)) {
        if (d->init != 0) {
            out.push_back({LocalDecl{d->name, 0}, s.loc});
            if (d->init > 1 || d->init < -1) out.push_back({LocalDecl{d->name, d->init / 2}, s.loc});
        }
    } else if (const Assign* a = std::get_if<Assign>(&s.node)) {
        std::vector<IntExprPtr> sub;
        int_variants(a->value, sub);
        for (const IntExprPtr& v : sub) out.push_back({Assign{a->name, v}, s.loc});
    } else if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
        out.push_back({Assign{c->name, mk_int_lit(0)}, s.loc});
        for (size_t i = 0; i < c->args.size(); ++i) {
            std::vector<IntExprPtr> sub;
            int_variants(c->args[i], sub);
            for (const IntExprPtr& v : sub) {
                CallAssign copy = *c;
                copy.args[i] = v;
                out.push_back({std::move(copy), s.loc});
            }
        }
    } else if (const If* f = std::get_if<If>(&s.node)) {
        std::vector<BoolExprPtr> sub;
        bool_variants(f->cond, sub);
        for (const BoolExprPtr& v : sub)
            out.push_back({If{v, f->then_body, f->else_body}, s.loc});
    } else if (const While* w = std::get_if<While>(&s.node)) {
        std::vector<BoolExprPtr> sub;
        bool_variants(w->cond, sub);
        for (const BoolExprPtr& v : sub) out.push_back({While{v, w->body}, s.loc});
    }
}

std::vector<StmtSeq> seq_variants(const StmtSeq& seq) {
    std::vector<StmtSeq> out;
    for (size_t i = 0; i < seq.size(); ++i) {
        {
            StmtSeq v = seq;
            v.erase(v.begin() + i);
            out.push_back(std::move(v));
        }
        if (const If* f = std::get_if<If>(&seq[i].node)) {
            for (const StmtSeq* branch : {&f->then_body, &f->else_body}) {
                StmtSeq v = seq;
                v.erase(v.begin() + i);
                v.insert(v.begin() + i, branch->begin(), branch->end());
                out.push_back(std::move(v));
            }
            for (StmtSeq& tv : seq_variants(f->then_body)) {
                StmtSeq v = seq;
                v[i] = {If{f->cond, std::move(tv), f->else_body}, seq[i].loc};
                out.push_back(std::move(v));
            }
            for (StmtSeq& ev : seq_variants(f->else_body)) {
                StmtSeq v = seq;
                v[i] = {If{f->cond, f->then_body, std::move(ev)}, seq[i].loc};
                out.push_back(std::move(v));
            }
        } else if (const While* w = std::get_if<While>(&seq[i].node)) {
            for (StmtSeq& bv : seq_variants(w->body)) {
                StmtSeq v = seq;
                v[i] = {While{w->cond, std::move(bv)}, seq[i].loc};
                out.push_back(std::move(v));
            }
        }
        std::vector<Stmt> svs;
        stmt_variants(seq[i], svs);
        for (Stmt& sv : svs) {
            StmtSeq v = seq;
            v[i] = std::move(sv);
            out.push_back(std::move(v));
        }
    }
    return out;
}

std::vector<Program> shrink_candidates(const Program& p) {
    std::vector<Program> out;
    for (size_t i = 0; i < p.functions.size(); ++i) {
        if (p.functions[i].name == "main") continue;
        Program q = p;
        q.functions.erase(q.functions.begin() + i);
        out.push_back(std::move(q));
    }
    for (size_t i = 0; i < p.globals.size(); ++i) {
        Program q = p;
        q.globals.erase(q.globals.begin() + i);
        out.push_back(std::move(q));
    }
    for (size_t i = 0; i < p.functions.size(); ++i) {
        for (StmtSeq& sv : seq_variants(p.functions[i].body)) {
            Program q = p;
            q.functions[i].body = std::move(sv);
            out.push_back(std::move(q));
        }
        std::vector<IntExprPtr> rv;
        int_variants(p.functions[i].return_expr, rv);
        for (const IntExprPtr& v : rv) {
            Program q = p;
            q.functions[i].return_expr = v;
            out.push_back(std::move(q));
        }
    }
    return out;
}

} // namespace

Program minimize(const Program& p, const trans::TransOptions& topts, std::uint64_t fuel) {
    if (!validate(p).empty()) return p;
    Verdict v0 = check_program(p, topts, fuel);
    if (v0.kind != VerdictKind::Disagree) return p;
    // Shrunk variants that run much longer than the original (say, a loop
    // whose decrement got deleted) are of no interest; a tight budget makes
    // rejecting them cheap. Anything that disagrees within the smaller
    // budget also disagrees within the original one.
    std::uint64_t cand_fuel = std::min(fuel, v0.interp_steps * 8 + 1024);
    auto still_bad = [&](const Program& q) {
        return validate(q).empty() &&
               check_program(q, topts, cand_fuel).kind == VerdictKind::Disagree;
    };
    Program cur = p;
    bool improved = true;
    while (improved) {
        improved = false;
        Measure m = measure(cur);
        for (Program& cand : shrink_candidates(cur)) {
            if (!(measure(cand) < m)) continue;
            if (still_bad(cand)) {
                cur = std::move(cand);
                improved = true;
                break;
            }
        }
    }
    return cur;
}

// --- campaign ----------------------------------------------------------------

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

class TraceLog : public interp::Observer {
public:
    std::ostringstream text;
    void on_rule(const std::string& rule, const std::string& stmt, int depth,
                 const interp::Assignment& globals, const interp::Assignment&) override {
        for (int i = 0; i < depth; ++i) text << "  ";
        text << rule;
        if (!stmt.empty()) text << "  " << stmt;
        if (!globals.empty()) {
            text << "   [";
            bool first = true;
            for (const auto& [k, v] : globals) {
                if (!first) text << ", ";
                first = false;
                text << k << "=" << v;
            }
            text << "]";
        }
        text << "\n";
    }
};

void persist_disagreement(const CampaignConfig& cfg, std::uint64_t seed, const Program& p,
                          const Verdict& v, const std::string& minimized) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.artifact_dir);
    std::string base = cfg.artifact_dir + "/seed" + std::to_string(seed);
    write_file(base + ".simp", pretty(p));
    write_file(base + ".verdict.txt",
               std::string(verdict_name(v.kind)) + "\n" + v.detail + "\n");
    if (!minimized.empty()) write_file(base + ".min.simp", minimized);

    TraceLog log;
    std::ostringstream itrace;
    try {
        interp::RunOutcome out = interp::run_program(p, cfg.fuel, &log);
        itrace << log.text.str();
        if (const interp::RunResult* r = std::get_if<interp::RunResult>(&out)) {
            itrace << "halted: return " << r->ret << "\n";
        } else {
            itrace << "out of fuel\n";
        }
    } catch (const Error& e) {
        itrace << log.text.str() << "error: " << e.what() << "\n";
    }
    write_file(base + ".interp.txt", itrace.str());

    std::ostringstream rtrace;
    try {
        lctrs::Lctrs sys = trans::conv(p, cfg.trans);
        lctrs::TermPtr start = trans::initial_term(p);
        // cfg.fuel bounds the interpreter steps, so this is the largest
        // budget check_program could have granted.
        lctrs::RewriteResult res =
            lctrs::rewrite_to_nf(start, sys, rewrite_budget(cfg.fuel), true);
        rtrace << lctrs::term_to_string(start) << "\n";
        size_t shown = 0;
        for (const lctrs::TraceStep& step : res.trace.steps) {
            if (++shown > 5000) {
                rtrace << "... (" << res.trace.steps.size() - 5000 << " more steps)\n";
                break;
            }
            rtrace << "-> {" << step.rule_id << " @ " << lctrs::position_str(step.pos)
                   << "} " << lctrs::term_to_string(step.result) << "\n";
        }
        rtrace << (res.status == lctrs::RewriteStatus::NormalForm ? "normal form\n"
                                                                  : "out of fuel\n");
    } catch (const Error& e) {
        rtrace << "error: " << e.what() << "\n";
    }
    write_file(base + ".rewrite.txt", rtrace.str());
}

} // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
    CampaignResult res;
    for (int i = 0; i < cfg.count; ++i) {
        gen::GenConfig g = cfg.gen;
        g.seed = cfg.gen.seed + static_cast<std::uint64_t>(i);
        Program p = gen::gen_program(g);
        std::vector<Diagnostic> probs = validate(p);
        if (!probs.empty()) {
            throw Error("generator bug: seed " + std::to_string(g.seed) +
                        " produced an invalid program: " + diagnostics_to_string(probs));
        }
        Verdict v = check_program(p, cfg.trans, cfg.fuel);
        res.outcomes.push_back({g.seed, v.kind, v.detail});
        switch (v.kind) {
        case VerdictKind::Agree: res.agree++; break;
        case VerdictKind::Disagree: res.disagree++; break;
        case VerdictKind::Inconclusive: res.inconclusive++; break;
        }
        if (v.kind == VerdictKind::Disagree) {
            res.disagree_seeds.push_back(g.seed);
            std::string minimized;
            if (res.first_disagreement.empty()) {
                minimized = pretty(minimize(p, cfg.trans, cfg.fuel));
                res.first_disagreement = minimized;
            }
            if (!cfg.artifact_dir.empty()) persist_disagreement(cfg, g.seed, p, v, minimized);
        }
    }
    return res;
}

std::string campaign_json(const CampaignConfig& cfg, const CampaignResult& r) {
    nlohmann::json j;
    j["config"] = {
        {"seed", cfg.gen.seed},
        {"count", cfg.count},
        {"globals", cfg.gen.globals},
        {"max_functions", cfg.gen.max_functions},
        {"max_stmts", cfg.gen.max_stmts},
        {"max_expr_depth", cfg.gen.max_expr_depth},
        {"allow_mul", cfg.gen.allow_mul},
        {"mutation", mutation_name(cfg.trans.mutation)},
        {"constructor_stack", cfg.trans.constructor_stack},
        {"fuel", cfg.fuel},
    };
    j["totals"] = {
        {"agree", r.agree},
        {"disagree", r.disagree},
        {"inconclusive", r.inconclusive},
    };
    j["disagree_seeds"] = r.disagree_seeds;
    nlohmann::json outs = nlohmann::json::array();
    for (const SeedOutcome& o : r.outcomes) {
        outs.push_back({{"seed", o.seed},
                        {"verdict", verdict_name(o.kind)},
                        {"detail", o.detail}});
    }
    j["outcomes"] = std::move(outs);
    if (!r.first_disagreement.empty()) j["first_disagreement"] = r.first_disagreement;
    return j.dump(2) + "\n";
}

} // namespace s2l::difftest

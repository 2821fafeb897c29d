// Full-system checks with pinned outcomes and per-check time budgets.
// Prints one PASS/FAIL line per check and exits nonzero if any fails.

#include "s2l/difftest.hpp"
#include "s2l/engine.hpp"
#include "s2l/format.hpp"
#include "s2l/gen.hpp"
#include "s2l/interp.hpp"
#include "s2l/ortho.hpp"
#include "s2l/parse.hpp"
#include "s2l/theory.hpp"
#include "s2l/transform.hpp"
#include "s2l/validate.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace s2l;
using namespace s2l::lctrs;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

syntax::Program load(const std::string& name) {
    syntax::Program p =
        syntax::parse_program(slurp(std::string(S2L_CORPUS_DIR) + "/" + name));
    std::vector<Diagnostic> probs = syntax::validate(p);
    if (!probs.empty()) throw std::runtime_error(name + ": " + diagnostics_to_string(probs));
    return p;
}

Lctrs load_sys(const std::string& name) {
    return parse_lctrs(slurp(std::string(S2L_CORPUS_DIR) + "/" + name));
}

const char* kCorpus[] = {
    "sum_counted.simp", "sum_iter.simp",     "shared_counter.simp", "fact_rec.simp",
    "while_sum.simp",   "mutual.simp",       "globals_pair.simp",   "no_globals.simp",
    "empty_main.simp",  "straightline.simp", "nested_if.simp",      "deep_calls.simp",
    "global_ret.simp",  "for_sugar.simp",    "call_global_arg.simp"};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

// ---- check 1: program-point renumbering ------------------------------------

bool is_point_symbol(const std::string& name) {
    if (name.size() < 2 || name[0] != 'u') return false;
    for (size_t i = 1; i < name.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
}

TermPtr rename_points(const TermPtr& t, std::map<std::string, std::string>& ren) {
    if (const App* a = t->as_app()) {
        std::string name = a->symbol;
        if (is_point_symbol(name)) {
            auto it = ren.find(name);
            if (it == ren.end())
                it = ren.emplace(name, "u" + std::to_string(ren.size() + 1)).first;
            name = it->second;
        }
        std::vector<TermPtr> args;
        for (const TermPtr& arg : a->args) args.push_back(rename_points(arg, ren));
        return mk_app(name, a->sort, std::move(args));
    }
    if (const Calc* c = t->as_calc()) {
        std::vector<TermPtr> args;
        for (const TermPtr& arg : c->args) args.push_back(rename_points(arg, ren));
        return mk_calc(c->op, std::move(args));
    }
    return t;
}

// Renumber u1, u2, ... in first-appearance order so that two systems that
// differ only in how program points were counted compare equal.
Lctrs canonical_points(const Lctrs& in) {
    std::map<std::string, std::string> ren;
    Lctrs out;
    for (const Sort& s : in.sorts) out.add_sort(s);
    for (const ConstrainedRule& r : in.rules)
        out.rules.push_back({rename_points(r.lhs, ren), rename_points(r.rhs, ren), r.constraint});
    for (const SymbolDecl& d : in.symbols) {
        auto it = ren.find(d.name);
        out.add_symbol({it == ren.end() ? d.name : it->second, d.args, d.result});
    }
    out.normalize();
    return out;
}

void check_reference_translation() {
    Lctrs sys = trans::conv(load("sum_counted.simp"));
    Lctrs golden = load_sys("sum_counted_stack.lctrs");
    expect(sys.rules.size() == 15, "expected 15 rules, got " + str(sys.rules.size()));
    expect(golden.rules.size() == 15, "reference system does not have 15 rules");
    expect(lctrs_eq(canonical_points(sys), canonical_points(golden)),
           "translation differs from the reference system");
}

// ---- check 2: reference reduction ------------------------------------------

void check_reference_reduction() {
    syntax::Program p = load("sum_counted.simp");
    Lctrs sys = trans::conv(p);
    RewriteResult res = rewrite_to_nf(trans::initial_term(p), sys, kDefaultFuel, true);
    expect(res.status == RewriteStatus::NormalForm, "did not reach a normal form");
    expect(term_eq(res.term, trans::final_term({4}, 0)),
           "normal form is " + term_to_string(res.term));
    const char* prefix[] = {
        "env(0, stack(u10(3), bot))",
        "env(0, stack(sum(3), stack(u11(3), bot)))",
        "env(0, stack(u1(3, 0), stack(u11(3), bot)))",
        "env(0 + 1, stack(u2(3, 0), stack(u11(3), bot)))",
        "env(1, stack(u2(3, 0), stack(u11(3), bot)))",
        "env(1, stack(u5(3, 0), stack(u11(3), bot)))",
        "env(1, stack(sum(3 - 1), stack(u6(3, 0), stack(u11(3), bot))))",
        "env(1, stack(sum(2), stack(u6(3, 0), stack(u11(3), bot))))",
    };
    expect(res.trace.steps.size() >= 8, "fewer than 8 steps");
    for (size_t i = 0; i < 8; ++i)
        expect(term_eq(res.trace.steps[i].result, parse_term_in(prefix[i], sys)),
               "step " + str(i + 1) + " is " + term_to_string(res.trace.steps[i].result) +
                   ", expected " + prefix[i]);
}

// ---- check 3: interpreting the counted sum ----------------------------------

void check_counted_sum_run() {
    interp::RunOutcome out = interp::run_program(load("sum_counted.simp"));
    const interp::RunResult* r = std::get_if<interp::RunResult>(&out);
    expect(r != nullptr, "ran out of fuel");
    expect(r->ret == 0, "returned " + str(r->ret));
    expect(r->globals.at("num") == 4, "num = " + str(r->globals.at("num")));
}

// ---- check 4: the hand-written factorial system -----------------------------

void check_factorial_steps() {
    Lctrs sys = load_sys("fact.lctrs");
    RewriteResult fact = rewrite_to_nf(parse_term_in("fact(3)", sys), sys);
    expect(fact.status == RewriteStatus::NormalForm, "fact(3) did not normalize");
    expect(term_eq(fact.term, mk_int(6)), "fact(3) = " + term_to_string(fact.term));
    expect(fact.steps == 10, "fact(3) took " + str(fact.steps) + " steps, expected 10");

    RewriteResult calc = rewrite_to_nf(parse_term_in("3 * (2 * (1 * 1))", sys), sys);
    expect(calc.status == RewriteStatus::NormalForm, "product did not normalize");
    expect(term_eq(calc.term, mk_int(6)), "product = " + term_to_string(calc.term));
    expect(calc.steps == 3, "product took " + str(calc.steps) + " steps, expected 3");
}

// ---- check 5: iterative sum --------------------------------------------------

void check_iterative_sum() {
    interp::RunOutcome out = interp::run_program(load("sum_iter.simp"));
    const interp::RunResult* r = std::get_if<interp::RunResult>(&out);
    expect(r != nullptr, "ran out of fuel");
    expect(r->ret == 6, "returned " + str(r->ret));
}

// ---- check 6: differential campaign ------------------------------------------

void check_campaigns() {
    difftest::CampaignConfig base;
    difftest::CampaignResult clean = difftest::run_campaign(base);
    expect(clean.disagree == 0,
           str(clean.disagree) + " disagreements on the unmutated translation");
    expect(clean.agree + clean.inconclusive == 200, "campaign did not cover 200 seeds");

    const trans::Mutation mutants[] = {trans::Mutation::DropEnvWrapper,
                                       trans::Mutation::SwapIfConstraints,
                                       trans::Mutation::OmitPopSubstitution};
    for (trans::Mutation m : mutants) {
        difftest::CampaignConfig cfg;
        cfg.trans.mutation = m;
        difftest::CampaignResult r = difftest::run_campaign(cfg);
        expect(r.disagree >= 1, "fault injection " + std::string(difftest::mutation_name(m)) +
                                    " went unnoticed over 200 seeds");
    }
}

// ---- check 7: three-way expression agreement ----------------------------------

syntax::IntExprPtr gen_int(gen::SplitMix64& rng, int depth) {
    if (depth == 0 || rng.below(3) == 0) {
        // mostly small literals; occasionally huge ones so overflow happens too
        if (rng.below(16) == 0)
            return syntax::mk_int_lit((std::int64_t{1} << 40) + (std::int64_t)rng.below(1000));
        return syntax::mk_int_lit((std::int64_t)rng.range(-9, 9));
    }
    auto op = static_cast<syntax::IntOp>(rng.below(3));
    return syntax::mk_int_bin(op, gen_int(rng, depth - 1), gen_int(rng, depth - 1));
}

syntax::BoolExprPtr gen_bool(gen::SplitMix64& rng, int depth) {
    if (depth == 0 || rng.below(4) == 0) {
        if (rng.below(3) == 0) return syntax::mk_bool_lit(rng.below(2) == 0);
        auto op = static_cast<syntax::CmpOp>(rng.below(2));
        return syntax::mk_cmp(op, gen_int(rng, 2), gen_int(rng, 2));
    }
    switch (rng.below(2)) {
    case 0: return syntax::mk_not(gen_bool(rng, depth - 1));
    default: return syntax::mk_or(gen_bool(rng, depth - 1), gen_bool(rng, depth - 1));
    }
}

TermPtr term_of_int(const syntax::IntExprPtr& e) {
    if (const auto* lit = std::get_if<syntax::IntLit>(&e->node)) return mk_int(lit->value);
    const auto& bin = std::get<syntax::IntBin>(e->node);
    TheoryOp op = bin.op == syntax::IntOp::Add   ? TheoryOp::Add
                  : bin.op == syntax::IntOp::Sub ? TheoryOp::Sub
                                                 : TheoryOp::Mul;
    return mk_calc(op, {term_of_int(bin.lhs), term_of_int(bin.rhs)});
}

TermPtr term_of_bool(const syntax::BoolExprPtr& e) {
    if (const auto* lit = std::get_if<syntax::BoolLit>(&e->node)) return mk_bool(lit->value);
    if (const auto* cmp = std::get_if<syntax::Cmp>(&e->node))
        return mk_calc(cmp->op == syntax::CmpOp::Eq ? TheoryOp::Eq : TheoryOp::Lt,
                       {term_of_int(cmp->lhs), term_of_int(cmp->rhs)});
    if (const auto* n = std::get_if<syntax::Not>(&e->node))
        return mk_calc(TheoryOp::Not, {term_of_bool(n->arg)});
    const auto& o = std::get<syntax::Or>(e->node);
    return mk_calc(TheoryOp::Or, {term_of_bool(o.lhs), term_of_bool(o.rhs)});
}

// Evaluation outcome: a value, or arithmetic overflow.
struct Out {
    bool ok = false;
    std::int64_t v = 0;
    bool operator==(const Out&) const = default;
    std::string show() const { return ok ? str(v) : "overflow"; }
};

Out run_eval(const std::function<std::int64_t()>& f) {
    try {
        return {true, f()};
    } catch (const EvalError&) {
        return {};
    }
}

void check_expression_agreement() {
    gen::SplitMix64 rng(2026);
    const Lctrs empty_sys;
    interp::Assignment sigma;
    int overflowed = 0;
    for (int i = 0; i < 1000; ++i) {
        bool boolean = i % 10 >= 7;
        TermPtr t;
        Out direct;
        if (boolean) {
            syntax::BoolExprPtr e = gen_bool(rng, 3);
            t = term_of_bool(e);
            direct = run_eval([&] { return (std::int64_t)interp::eval_bool(e, sigma); });
        } else {
            syntax::IntExprPtr e = gen_int(rng, 3);
            t = term_of_int(e);
            direct = run_eval([&] { return interp::eval_int(e, sigma); });
        }
        Out theory = run_eval([&] {
            TermPtr v = interpret_theory(t);
            return v->as_int() ? v->as_int()->value : (std::int64_t)v->as_bool()->value;
        });
        Out rewritten = run_eval([&] {
            RewriteResult res = rewrite_to_nf(t, empty_sys);
            expect(res.status == RewriteStatus::NormalForm, "expression ran out of fuel");
            expect(res.term->is_value(), "normal form is not a value: " + term_to_string(res.term));
            return res.term->as_int() ? res.term->as_int()->value
                                      : (std::int64_t)res.term->as_bool()->value;
        });
        if (!direct.ok) ++overflowed;
        expect(direct == theory && direct == rewritten,
               "disagreement on " + term_to_string(t) + ": interpreter " + direct.show() +
                   ", theory " + theory.show() + ", rewriting " + rewritten.show());
    }
    expect(overflowed > 0 && overflowed < 1000, "overflow cases not exercised");
}

// ---- check 8: orthogonality --------------------------------------------------

void check_orthogonality() {
    for (const char* name : kCorpus) {
        OrthoReport rep = check_orthogonal(trans::conv(load(name)));
        expect(rep.orthogonal(), std::string(name) + ": " + rep.str());
    }
    OrthoReport fact = check_orthogonal(load_sys("fact.lctrs"));
    expect(fact.orthogonal(), "factorial system: " + fact.str());

    Lctrs clash;
    clash.add_sort(sort_int);
    clash.add_symbol({"f", {sort_int}, sort_int});
    TermPtr lhs = mk_app("f", sort_int, {mk_var("x", sort_int)});
    clash.rules.push_back({lhs, mk_int(1), mk_bool(true)});
    clash.rules.push_back({lhs, mk_int(2), mk_bool(true)});
    OrthoReport rep = check_orthogonal(clash);
    expect(!rep.orthogonal(), "the overlapping pair was not reported");
    expect(!rep.findings.empty() && rep.findings[0].kind == OrthoFinding::Overlap,
           "expected an overlap finding, got: " + rep.str());
}

// ---- check 9: emit/parse round trip -------------------------------------------

void check_round_trip() {
    std::vector<Lctrs> systems;
    for (const char* name : kCorpus) systems.push_back(trans::conv(load(name)));
    systems.push_back(load_sys("fact.lctrs"));
    systems.push_back(load_sys("sum_counted_stack.lctrs"));
    gen::GenConfig g;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        g.seed = seed;
        systems.push_back(trans::conv(gen::gen_program(g)));
    }
    for (size_t i = 0; i < systems.size(); ++i)
        expect(lctrs_eq(parse_lctrs(emit(systems[i])), systems[i]),
               "system " + str(i) + " does not survive the round trip");
}

struct Check {
    const char* what;
    double limit_s;
    std::function<void()> body;
};

} // namespace

int main() {
    const Check checks[] = {
        {"counted-sum program translates to the fifteen-rule reference system", 1.0,
         check_reference_translation},
        {"rewriting the counted-sum start term follows the reference reduction", 1.0,
         check_reference_reduction},
        {"interpreting the counted-sum program returns 0 and leaves num = 4", 1.0,
         check_counted_sum_run},
        {"factorial system: fact(3) -> 6 in 10 steps, 3 * (2 * (1 * 1)) -> 6 in 3", 1.0,
         check_factorial_steps},
        {"iterative sum program returns 6", 1.0, check_iterative_sum},
        {"200-seed campaign is clean and every fault injection is caught", 60.0,
         check_campaigns},
        {"interpreter, theory and rewriting agree on 1000 ground expressions", 5.0,
         check_expression_agreement},
        {"translated corpus systems are orthogonal; the overlapping pair is not", 5.0,
         check_orthogonality},
        {"emit then parse is the identity on corpus and 500 generated systems", 10.0,
         check_round_trip},
    };

    int failed = 0;
    int id = 0;
    for (const Check& c : checks) {
        ++id;
        auto t0 = std::chrono::steady_clock::now();
        std::string err;
        try {
            c.body();
        } catch (const std::exception& e) {
            err = e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = err.empty() && dt < c.limit_s;
        if (!ok) ++failed;
        std::printf("%s  %d/9  %-72s  %6.2fs (limit %gs)\n", ok ? "PASS" : "FAIL", id, c.what,
                    dt, c.limit_s);
        if (!err.empty()) std::printf("          %s\n", err.c_str());
        else if (!ok) std::printf("          over the time limit\n");
    }
    if (failed == 0) std::printf("all 9 checks passed\n");
    else std::printf("%d of 9 checks failed\n", failed);
    return failed == 0 ? 0 : 1;
}

#include "s2l/difftest.hpp"
#include "s2l/engine.hpp"
#include "s2l/format.hpp"
#include "s2l/gen.hpp"
#include "s2l/interp.hpp"
#include "s2l/parse.hpp"
#include "s2l/pretty.hpp"
#include "s2l/transform.hpp"
#include "s2l/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace s2l;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 1;
}

// --- JSON views ---------------------------------------------------------

json expr_json(const syntax::IntExprPtr& e) {
    using namespace syntax;
    if (const IntLit* l = std::get_if<IntLit>(&e->node)) return {{"int", l->value}};
    if (const VarRef* v = std::get_if<VarRef>(&e->node)) return {{"var", v->name}};
    const IntBin& b = std::get<IntBin>(e->node);
    const char* op = b.op == IntOp::Add ? "+" : b.op == IntOp::Sub ? "-" : "*";
    return {{"op", op}, {"lhs", expr_json(b.lhs)}, {"rhs", expr_json(b.rhs)}};
}

json expr_json(const syntax::BoolExprPtr& e) {
    using namespace syntax;
    if (const BoolLit* l = std::get_if<BoolLit>(&e->node)) return {{"bool", l->value}};
    if (const Cmp* c = std::get_if<Cmp>(&e->node)) {
        return {{"op", c->op == CmpOp::Eq ? "==" : "<"},
                {"lhs", expr_json(c->lhs)},
                {"rhs", expr_json(c->rhs)}};
    }
    if (const Not* n = std::get_if<Not>(&e->node)) return {{"op", "!"}, {"arg", expr_json(n->arg)}};
    const Or& o = std::get<Or>(e->node);
    return {{"op", "||"}, {"lhs", expr_json(o.lhs)}, {"rhs", expr_json(o.rhs)}};
}

json seq_json(const syntax::StmtSeq& seq);

json stmt_json(const syntax::Stmt& s) {
    using namespace syntax;
    if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node))
        return {{"decl", d->name}, {"init", d->init}};
    if (const Assign* a = std::get_if<Assign>(&s.node))
        return {{"assign", a->name}, {"value", expr_json(a->value)}};
    if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
        json args = json::array();
        for (const IntExprPtr& a : c->args) args.push_back(expr_json(a));
        return {{"assign", c->name}, {"call", c->callee}, {"args", std::move(args)}};
    }
    if (const If* f = std::get_if<If>(&s.node)) {
        return {{"if", expr_json(f->cond)},
                {"then", seq_json(f->then_body)},
                {"else", seq_json(f->else_body)}};
    }
    const While& w = std::get<While>(s.node);
    return {{"while", expr_json(w.cond)}, {"body", seq_json(w.body)}};
}

json seq_json(const syntax::StmtSeq& seq) {
    json out = json::array();
    for (const syntax::Stmt& s : seq) out.push_back(stmt_json(s));
    return out;
}

json program_json(const syntax::Program& p) {
    json globals = json::array();
    for (const syntax::Global& g : p.globals)
        globals.push_back({{"name", g.name}, {"init", g.init}});
    json functions = json::array();
    for (const syntax::FunDef& f : p.functions) {
        functions.push_back({{"name", f.name},
                             {"params", f.params},
                             {"body", seq_json(f.body)},
                             {"return", expr_json(f.return_expr)}});
    }
    return {{"globals", std::move(globals)}, {"functions", std::move(functions)}};
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
    json out = json::array();
    for (const Diagnostic& d : ds)
        out.push_back({{"line", d.loc.line}, {"col", d.loc.col}, {"message", d.message}});
    return out;
}

json trace_json(const lctrs::Trace& trace) {
    json steps = json::array();
    for (const lctrs::TraceStep& s : trace.steps) {
        steps.push_back({{"rule", s.rule_id},
                         {"pos", lctrs::position_str(s.pos)},
                         {"term", lctrs::term_to_string(s.result)}});
    }
    return steps;
}

// Parse and validate, printing diagnostics on failure.
syntax::Program load_program(const std::string& path, bool strict) {
    syntax::Program p = syntax::parse_program(slurp(path), {strict});
    std::vector<Diagnostic> diags = syntax::validate(p);
    if (!diags.empty()) throw Error(path + ":\n" + diagnostics_to_string(diags));
    return p;
}

struct CommonFlags {
    std::string file;
    std::uint64_t fuel = 1'000'000;
    bool strict = false;
    bool as_json = false;
    bool trace = false;
    bool constructor_stack = false;
    std::string mutate = "none";
    std::string output;
};

trans::TransOptions trans_options(const CommonFlags& f) {
    trans::TransOptions t;
    t.mutation = difftest::mutation_from_name(f.mutate);
    t.constructor_stack = f.constructor_stack;
    return t;
}

int cmd_parse(const CommonFlags& f) {
    syntax::Program p = syntax::parse_program(slurp(f.file), {f.strict});
    if (f.as_json) {
        std::cout << program_json(p).dump(2) << "\n";
    } else {
        std::cout << syntax::pretty(p);
    }
    return 0;
}

int cmd_check(const CommonFlags& f) {
    std::vector<Diagnostic> diags;
    try {
        diags = syntax::validate(syntax::parse_program(slurp(f.file), {f.strict}));
    } catch (const ParseError& e) {
        diags.push_back({e.what(), e.loc()});
    }
    if (f.as_json) {
        std::cout << diagnostics_json(diags).dump(2) << "\n";
    } else {
        for (const Diagnostic& d : diags) {
            std::cout << f.file << ":" << d.loc.str() << ": " << d.message << "\n";
        }
    }
    return diags.empty() ? 0 : 1;
}

int cmd_run(const CommonFlags& f) {
    syntax::Program p = load_program(f.file, f.strict);
    interp::RunOutcome out = interp::run_program(p, f.fuel);
    if (const interp::FuelExhausted* fe = std::get_if<interp::FuelExhausted>(&out)) {
        return fail("out of fuel after " + std::to_string(fe->steps) + " steps");
    }
    const interp::RunResult& r = std::get<interp::RunResult>(out);
    if (f.as_json) {
        json globals = json::object();
        for (const syntax::Global& g : p.globals) globals[g.name] = r.globals.at(g.name);
        json j = {{"return", r.ret}, {"globals", std::move(globals)}, {"steps", r.steps}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "return = " << r.ret << "\n";
        for (const syntax::Global& g : p.globals) {
            std::cout << g.name << " = " << r.globals.at(g.name) << "\n";
        }
    }
    return 0;
}

int cmd_transform(const CommonFlags& f) {
    syntax::Program p = load_program(f.file, f.strict);
    std::string text = lctrs::emit(trans::conv(p, trans_options(f)));
    if (f.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(f.output);
        if (!out.good()) throw Error("cannot write " + f.output);
        out << text;
    }
    return 0;
}

int cmd_rewrite(const CommonFlags& f, const std::string& term_text) {
    lctrs::Lctrs sys = lctrs::parse_lctrs(slurp(f.file));
    lctrs::TermPtr start = lctrs::parse_term_in(term_text, sys);
    if (!start->is_ground()) throw Error("start term must be ground");
    lctrs::RewriteResult res = lctrs::rewrite_to_nf(start, sys, f.fuel, f.trace || f.as_json);
    bool done = res.status == lctrs::RewriteStatus::NormalForm;
    if (f.as_json) {
        json j = {{"status", done ? "normal-form" : "out-of-fuel"},
                  {"steps", res.steps},
                  {"term", lctrs::term_to_string(res.term)}};
        if (f.trace) j["trace"] = trace_json(res.trace);
        std::cout << j.dump(2) << "\n";
    } else if (f.trace) {
        for (const lctrs::TraceStep& s : res.trace.steps) {
            std::cout << lctrs::term_to_string(s.result) << "\n";
        }
    } else if (done) {
        std::cout << lctrs::term_to_string(res.term) << "\n";
    }
    if (!done) return fail("out of fuel after " + std::to_string(res.steps) + " steps");
    return 0;
}

int cmd_trace(const CommonFlags& f) {
    syntax::Program p = load_program(f.file, f.strict);
    lctrs::Lctrs sys = trans::conv(p, trans_options(f));
    lctrs::TermPtr start = trans::initial_term(p);
    lctrs::RewriteResult res = lctrs::rewrite_to_nf(start, sys, f.fuel, true);
    bool done = res.status == lctrs::RewriteStatus::NormalForm;
    if (f.as_json) {
        json j = {{"status", done ? "normal-form" : "out-of-fuel"},
                  {"initial", lctrs::term_to_string(start)},
                  {"steps", res.steps},
                  {"term", lctrs::term_to_string(res.term)},
                  {"trace", trace_json(res.trace)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << lctrs::term_to_string(start) << "\n";
        for (const lctrs::TraceStep& s : res.trace.steps) {
            std::cout << lctrs::term_to_string(s.result) << "\n";
        }
    }
    if (!done) return fail("out of fuel after " + std::to_string(res.steps) + " steps");
    return 0;
}

struct DifftestFlags {
    std::uint64_t seed = 1;
    int count = 200;
    std::uint64_t fuel = 1'000'000;
    std::string mutate = "none";
    bool constructor_stack = false;
    bool as_json = false;
    std::string artifacts;
    int globals = 1;
    int max_functions = 3;
    int max_stmts = 4;
    int max_expr_depth = 2;
    bool no_mul = false;
};

int cmd_difftest(const DifftestFlags& f) {
    difftest::CampaignConfig cfg;
    cfg.gen.seed = f.seed;
    cfg.gen.globals = f.globals;
    cfg.gen.max_functions = f.max_functions;
    cfg.gen.max_stmts = f.max_stmts;
    cfg.gen.max_expr_depth = f.max_expr_depth;
    cfg.gen.allow_mul = !f.no_mul;
    cfg.count = f.count;
    cfg.fuel = f.fuel;
    cfg.trans.mutation = difftest::mutation_from_name(f.mutate);
    cfg.trans.constructor_stack = f.constructor_stack;
    cfg.artifact_dir = f.artifacts;
    difftest::CampaignResult r = difftest::run_campaign(cfg);
    if (f.as_json) {
        std::cout << difftest::campaign_json(cfg, r);
    } else {
        std::cout << "seeds " << f.seed << ".." << f.seed + f.count - 1 << ", mutation "
                  << f.mutate << "\n"
                  << "agree " << r.agree << ", disagree " << r.disagree << ", inconclusive "
                  << r.inconclusive << "\n";
        if (!r.disagree_seeds.empty()) {
            std::cout << "disagree seeds:";
            for (std::uint64_t s : r.disagree_seeds) std::cout << " " << s;
            std::cout << "\nfirst disagreement, minimized:\n" << r.first_disagreement;
        }
    }
    return r.disagree > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIMP+ programs as logically constrained term rewriting systems"};
    app.require_subcommand(1);

    CommonFlags f;
    DifftestFlags df;
    std::string term_text;

    auto add_fuel = [&](CLI::App* cmd, std::uint64_t& target) {
        cmd->add_option("--fuel", target, "step budget (default 1000000)")
            ->envname("SIMP2LCTRS_FUEL");
    };
    auto add_mutate = [&](CLI::App* cmd, std::string& target) {
        cmd->add_option("--mutate", target, "fault injection: drop-env | swap-if | omit-pop")
            ->check(CLI::IsMember({"none", "drop-env", "swap-if", "omit-pop"}));
    };

    CLI::App* parse_cmd = app.add_subcommand("parse", "parse a program, print it back");
    parse_cmd->add_option("file", f.file, "program")->required()->check(CLI::ExistingFile);
    parse_cmd->add_flag("--strict", f.strict, "reject the multiplication extension");
    parse_cmd->add_flag("--json", f.as_json, "print the syntax tree as JSON");

    CLI::App* check_cmd = app.add_subcommand("check", "parse and validate, print diagnostics");
    check_cmd->add_option("file", f.file, "program")->required()->check(CLI::ExistingFile);
    check_cmd->add_flag("--strict", f.strict, "reject the multiplication extension");
    check_cmd->add_flag("--json", f.as_json, "print diagnostics as JSON");

    CLI::App* run_cmd = app.add_subcommand("run", "interpret, print return value and globals");
    run_cmd->add_option("file", f.file, "program")->required()->check(CLI::ExistingFile);
    add_fuel(run_cmd, f.fuel);
    run_cmd->add_flag("--strict", f.strict, "reject the multiplication extension");
    run_cmd->add_flag("--json", f.as_json, "print the result as JSON");

    CLI::App* transform_cmd =
        app.add_subcommand("transform", "translate to a rewriting system");
    transform_cmd->add_option("file", f.file, "program")->required()->check(CLI::ExistingFile);
    transform_cmd->add_option("-o,--output", f.output, "write here instead of stdout");
    transform_cmd->add_flag("--strict", f.strict, "reject the multiplication extension");
    transform_cmd->add_flag("--constructor-stack", f.constructor_stack,
                            "keep stack rules under the env wrapper");
    add_mutate(transform_cmd, f.mutate);

    CLI::App* rewrite_cmd =
        app.add_subcommand("rewrite", "rewrite a ground term to normal form");
    rewrite_cmd->add_option("system", f.file, ".lctrs file")->required()->check(CLI::ExistingFile);
    rewrite_cmd->add_option("term", term_text, "ground start term")->required();
    add_fuel(rewrite_cmd, f.fuel);
    rewrite_cmd->add_flag("--trace", f.trace, "print every step");
    rewrite_cmd->add_flag("--json", f.as_json, "print the result as JSON");

    CLI::App* trace_cmd =
        app.add_subcommand("trace", "translate and rewrite from the initial term");
    trace_cmd->add_option("file", f.file, "program")->required()->check(CLI::ExistingFile);
    add_fuel(trace_cmd, f.fuel);
    trace_cmd->add_flag("--strict", f.strict, "reject the multiplication extension");
    trace_cmd->add_flag("--constructor-stack", f.constructor_stack,
                        "keep stack rules under the env wrapper");
    add_mutate(trace_cmd, f.mutate);
    trace_cmd->add_flag("--json", f.as_json, "print the trace as JSON");

    CLI::App* difftest_cmd =
        app.add_subcommand("difftest", "compare interpreter and rewriter on random programs");
    difftest_cmd->add_option("--seed", df.seed, "first seed (default 1)");
    difftest_cmd->add_option("--count", df.count, "number of seeds (default 200)")
        ->check(CLI::PositiveNumber);
    add_fuel(difftest_cmd, df.fuel);
    add_mutate(difftest_cmd, df.mutate);
    difftest_cmd->add_flag("--constructor-stack", df.constructor_stack,
                           "keep stack rules under the env wrapper");
    difftest_cmd->add_flag("--json", df.as_json, "print the campaign report as JSON");
    difftest_cmd->add_option("--artifacts", df.artifacts,
                             "write disagreement programs and traces into this directory");
    difftest_cmd->add_option("--globals", df.globals, "globals per program (default 1)");
    difftest_cmd->add_option("--max-functions", df.max_functions,
                             "functions besides main (default 3)");
    difftest_cmd->add_option("--max-stmts", df.max_stmts, "statements per block (default 4)");
    difftest_cmd->add_option("--max-expr-depth", df.max_expr_depth,
                             "expression depth (default 2)");
    difftest_cmd->add_flag("--no-mul", df.no_mul, "generate without multiplication");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*parse_cmd) return cmd_parse(f);
        if (*check_cmd) return cmd_check(f);
        if (*run_cmd) return cmd_run(f);
        if (*transform_cmd) return cmd_transform(f);
        if (*rewrite_cmd) return cmd_rewrite(f, term_text);
        if (*trace_cmd) return cmd_trace(f);
        return cmd_difftest(df);
    } catch (const Error& e) {
        return fail(e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

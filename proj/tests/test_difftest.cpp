#include "s2l/difftest.hpp"

#include "s2l/gen.hpp"
#include "s2l/interp.hpp"
#include "s2l/format.hpp"
#include "s2l/parse.hpp"
#include "s2l/pretty.hpp"
#include "s2l/validate.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace s2l;
using namespace s2l::difftest;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), ("cannot open " + path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

syntax::Program load(const std::string& name) {
    syntax::Program p =
        syntax::parse_program(slurp(std::string(S2L_CORPUS_DIR) + "/" + name));
    REQUIRE(syntax::validate(p).empty());
    return p;
}

const char* kCorpus[] = {
    "sum_counted.simp",   "sum_iter.simp", "shared_counter.simp",      "fact_rec.simp",
    "while_sum.simp",  "mutual.simp",    "globals_pair.simp", "no_globals.simp",
    "nested_if.simp",  "for_sugar.simp", "empty_main.simp",   "straightline.simp",
    "global_ret.simp", "call_global_arg.simp", "deep_calls.simp",
};

syntax::Program gen_seed(std::uint64_t seed) {
    gen::GenConfig g;
    g.seed = seed;
    return gen::gen_program(g);
}

} // namespace

TEST_CASE("the generator is deterministic per seed") {
    CHECK(syntax::pretty(gen_seed(7)) == syntax::pretty(gen_seed(7)));
    CHECK(syntax::pretty(gen_seed(7)) != syntax::pretty(gen_seed(8)));
}

TEST_CASE("generated programs validate for five hundred consecutive seeds") {
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        syntax::Program p = gen_seed(seed);
        std::vector<Diagnostic> probs = syntax::validate(p);
        CHECK_MESSAGE(probs.empty(),
                      ("seed " + std::to_string(seed) + ": " + diagnostics_to_string(probs)));
    }
}

TEST_CASE("generated programs honor the configuration knobs") {
    gen::GenConfig g;
    g.globals = 3;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        g.seed = seed;
        CHECK(gen::gen_program(g).globals.size() == 3);
    }
    gen::GenConfig solo;
    solo.max_functions = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        solo.seed = seed;
        syntax::Program p = gen::gen_program(solo);
        REQUIRE(p.functions.size() == 1);
        CHECK(p.functions[0].name == "main");
    }
    gen::GenConfig bare;
    bare.max_stmts = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        bare.seed = seed;
        syntax::Program p = gen::gen_program(bare);
        REQUIRE(p.functions.size() == 1);
        CHECK(p.functions[0].name == "main");
        CHECK(p.functions[0].body.empty());
        CHECK(check_program(p).kind == VerdictKind::Agree);
    }
    gen::GenConfig pure;
    pure.globals = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        pure.seed = seed;
        syntax::Program p = gen::gen_program(pure);
        CHECK(p.globals.empty());
        std::string text = lctrs::emit(trans::conv(p));
        for (std::string_view line : {std::string_view("rule env"), std::string_view("-> env")})
            CHECK_MESSAGE(text.find(line) == std::string::npos, text);
    }
}

TEST_CASE("generated programs halt by construction") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        try {
            interp::RunOutcome out = interp::run_program(gen_seed(seed), 100'000);
            CHECK_MESSAGE(std::holds_alternative<interp::RunResult>(out),
                          ("seed " + std::to_string(seed) + " ran out of fuel"));
        } catch (const EvalError&) {
            // overflow is the one permitted failure
        }
    }
}

TEST_CASE("interpreter and rewriter agree on every corpus program") {
    for (const char* name : kCorpus) {
        Verdict v = check_program(load(name));
        CHECK_MESSAGE(v.kind == VerdictKind::Agree, (std::string(name) + ": " + v.detail));
        CHECK(v.interp_steps > 0);
        CHECK(v.rewrite_steps > 0);
    }
}

TEST_CASE("interpreter overflow makes the check inconclusive") {
    syntax::Program p = syntax::parse_program(
        "int main() {\n"
        "  int a = 4611686018427387904;\n"
        "  a = a * 4;\n"
        "  return a;\n"
        "}");
    Verdict v = check_program(p);
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK(v.detail.find("interpreter:") == 0);
}

TEST_CASE("interpreter fuel exhaustion makes the check inconclusive") {
    syntax::Program p = syntax::parse_program(
        "int main() {\n"
        "  int c = 1;\n"
        "  while (0 < c) {\n"
        "    c = 1;\n"
        "  }\n"
        "  return 0;\n"
        "}");
    Verdict v = check_program(p, {}, 500);
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK(v.detail == "interpreter ran out of fuel");
    CHECK(v.interp_steps == 500);
}

TEST_CASE("a rewrite that will not terminate is cut off as inconclusive") {
    // Swapping the if constraints sends the guarded recursion the wrong way
    // when the argument starts negative, so the rewrite grows forever while
    // the interpreter halts immediately.
    syntax::Program p = syntax::parse_program(
        "int f(int a) {\n"
        "  int r = 0;\n"
        "  if (!(0 < a)) {\n"
        "    r = 0;\n"
        "  } else {\n"
        "    r = f(a - 1);\n"
        "  }\n"
        "  return r;\n"
        "}\n"
        "int main() {\n"
        "  int x = 0;\n"
        "  x = f(-1);\n"
        "  return x;\n"
        "}");
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::SwapIfConstraints;
    Verdict v = check_program(p, topts);
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK(v.detail == "rewriting ran out of fuel");
}

TEST_CASE("dropping the env wrapper loses a global write on the recursive sum program") {
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::DropEnvWrapper;
    Verdict v = check_program(load("sum_counted.simp"), topts);
    CHECK(v.kind == VerdictKind::Disagree);
    CHECK(v.detail ==
          "rewriting reached env(0, stack(return(0), bot)) "
          "but the interpreter gives env(4, stack(return(0), bot))");
}

TEST_CASE("dropping the env wrapper leaves a global read unbound") {
    syntax::Program p = syntax::parse_program(
        "int g = 5;\n"
        "int main() {\n"
        "  int x = 0;\n"
        "  x = g;\n"
        "  return x;\n"
        "}");
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::DropEnvWrapper;
    Verdict v = check_program(p, topts);
    CHECK(v.kind == VerdictKind::Disagree);
    CHECK(v.detail.find("engine:") == 0);
    CHECK(v.detail.find("not bound by the left-hand side") != std::string::npos);
}

TEST_CASE("swapping if constraints is caught as a wrong normal form") {
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::SwapIfConstraints;
    Verdict v = check_program(load("sum_counted.simp"), topts);
    CHECK(v.kind == VerdictKind::Disagree);
    CHECK(v.detail.find("interpreter gives") != std::string::npos);
}

TEST_CASE("forgetting the pop substitution is caught on recursive factorial") {
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::OmitPopSubstitution;
    Verdict v = check_program(load("fact_rec.simp"), topts);
    CHECK(v.kind == VerdictKind::Disagree);
}

TEST_CASE("minimize keeps a program that already agrees") {
    syntax::Program p = load("sum_counted.simp");
    CHECK(syntax::pretty(minimize(p)) == syntax::pretty(p));
}

TEST_CASE("minimize shrinks a dropped-env disagreement to a single global read") {
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::DropEnvWrapper;
    syntax::Program min = minimize(gen_seed(1), topts);
    CHECK(syntax::pretty(min) ==
          "int g1 = 1;\n"
          "\n"
          "int main() {\n"
          "  int v3 = 0;\n"
          "  v3 = g1;\n"
          "  return v3;\n"
          "}\n");
    CHECK(syntax::validate(min).empty());
    CHECK(check_program(min, topts).kind == VerdictKind::Disagree);
}

TEST_CASE("minimize shrinks a swapped-if disagreement to one branch write") {
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::SwapIfConstraints;
    syntax::Program min = minimize(gen_seed(6), topts);
    CHECK(syntax::pretty(min) ==
          "int g1 = 1;\n"
          "\n"
          "int main() {\n"
          "  if (true) {\n"
          "    g1 = 0;\n"
          "  } else {\n"
          "  }\n"
          "  int v5 = 0;\n"
          "  return v5;\n"
          "}\n");
    CHECK(check_program(min, topts).kind == VerdictKind::Disagree);
}

TEST_CASE("minimize shrinks an omitted-pop disagreement to one call result") {
    trans::TransOptions topts;
    topts.mutation = trans::Mutation::OmitPopSubstitution;
    syntax::Program min = minimize(gen_seed(12), topts);
    CHECK(syntax::pretty(min) ==
          "int g1 = -4;\n"
          "\n"
          "int f1(int a1) {\n"
          "  return 0;\n"
          "}\n"
          "\n"
          "int main() {\n"
          "  g1 = f1(0);\n"
          "  int v10 = 0;\n"
          "  return v10;\n"
          "}\n");
    CHECK(check_program(min, topts).kind == VerdictKind::Disagree);
}

TEST_CASE("a two hundred seed campaign of the faithful translation never disagrees") {
    CampaignConfig cfg;
    CampaignResult r = run_campaign(cfg);
    CHECK(r.agree == 199);
    CHECK(r.disagree == 0);
    CHECK(r.inconclusive == 1);
    REQUIRE(r.outcomes.size() == 200);
    // the one inconclusive seed is a genuine interpreter overflow
    for (const SeedOutcome& o : r.outcomes) {
        if (o.kind == VerdictKind::Inconclusive) {
            CHECK(o.seed == 179);
            CHECK(o.detail.find("integer overflow") != std::string::npos);
        }
    }
    CHECK(r.disagree_seeds.empty());
    CHECK(r.first_disagreement.empty());
}

TEST_CASE("every mutation is killed within a short campaign") {
    CampaignConfig drop;
    drop.trans.mutation = trans::Mutation::DropEnvWrapper;
    CampaignResult rd = run_campaign(drop);
    CHECK(rd.disagree == 199);
    CHECK(rd.inconclusive == 1);
    REQUIRE(!rd.disagree_seeds.empty());
    CHECK(rd.disagree_seeds.front() == 1);
    CHECK(rd.first_disagreement ==
          "int g1 = 1;\n"
          "\n"
          "int main() {\n"
          "  int v3 = 0;\n"
          "  v3 = g1;\n"
          "  return v3;\n"
          "}\n");

    CampaignConfig swap;
    swap.count = 40;
    swap.trans.mutation = trans::Mutation::SwapIfConstraints;
    CampaignResult rs = run_campaign(swap);
    CHECK(rs.agree == 31);
    CHECK(rs.disagree == 7);
    CHECK(rs.inconclusive == 2);
    REQUIRE(!rs.disagree_seeds.empty());
    CHECK(rs.disagree_seeds.front() == 6);

    CampaignConfig pop;
    pop.count = 40;
    pop.trans.mutation = trans::Mutation::OmitPopSubstitution;
    CampaignResult rp = run_campaign(pop);
    CHECK(rp.agree == 30);
    CHECK(rp.disagree == 10);
    CHECK(rp.inconclusive == 0);
    REQUIRE(!rp.disagree_seeds.empty());
    CHECK(rp.disagree_seeds.front() == 12);
}

TEST_CASE("the campaign report is valid json and matches the tallies") {
    CampaignConfig cfg;
    cfg.count = 40;
    cfg.trans.mutation = trans::Mutation::OmitPopSubstitution;
    CampaignResult r = run_campaign(cfg);
    std::string text = campaign_json(cfg, r);
    CHECK(text == campaign_json(cfg, run_campaign(cfg)));

    nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["config"]["mutation"] == "omit-pop");
    CHECK(j["config"]["count"] == 40);
    CHECK(j["config"]["seed"] == 1);
    CHECK(j["totals"]["agree"] == r.agree);
    CHECK(j["totals"]["disagree"] == r.disagree);
    CHECK(j["totals"]["inconclusive"] == r.inconclusive);
    CHECK(j["outcomes"].size() == 40);
    CHECK(j["disagree_seeds"].size() == r.disagree_seeds.size());
    CHECK(j.contains("first_disagreement"));

    CampaignConfig clean;
    clean.count = 50;
    nlohmann::json jc =
        nlohmann::json::parse(campaign_json(clean, run_campaign(clean)));
    CHECK(jc["totals"]["agree"] == 50);
    CHECK(!jc.contains("first_disagreement"));
}

TEST_CASE("disagreements are written out when an artifact directory is set") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "s2l_difftest_artifacts";
    fs::remove_all(dir);

    CampaignConfig cfg;
    cfg.count = 2;
    cfg.trans.mutation = trans::Mutation::DropEnvWrapper;
    cfg.artifact_dir = dir.string();
    CampaignResult r = run_campaign(cfg);
    REQUIRE(r.disagree == 2);

    for (const char* name : {"seed1.simp", "seed1.min.simp", "seed1.verdict.txt",
                             "seed1.interp.txt", "seed1.rewrite.txt", "seed2.simp",
                             "seed2.verdict.txt"}) {
        CHECK_MESSAGE(fs::exists(dir / name), name);
    }
    CHECK(!fs::exists(dir / "seed2.min.simp"));

    syntax::Program back = syntax::parse_program(slurp((dir / "seed1.simp").string()));
    CHECK(syntax::pretty(back) == syntax::pretty(gen_seed(1)));
    CHECK(slurp((dir / "seed1.verdict.txt").string()).find("disagree") == 0);

    fs::remove_all(dir);
}

TEST_CASE("mutation names round-trip and junk is rejected") {
    for (trans::Mutation m :
         {trans::Mutation::None, trans::Mutation::DropEnvWrapper,
          trans::Mutation::SwapIfConstraints, trans::Mutation::OmitPopSubstitution}) {
        CHECK(mutation_from_name(mutation_name(m)) == m);
    }
    CHECK_THROWS_AS(mutation_from_name("drop-envv"), Error);
    CHECK(std::string(verdict_name(VerdictKind::Agree)) == "agree");
    CHECK(std::string(verdict_name(VerdictKind::Disagree)) == "disagree");
    CHECK(std::string(verdict_name(VerdictKind::Inconclusive)) == "inconclusive");
}

#include "s2l/interp.hpp"

#include "s2l/parse.hpp"
#include "s2l/validate.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace s2l;
using namespace s2l::syntax;
using namespace s2l::interp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), ("cannot open " + path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Program load(const std::string& name) {
    Program p = parse_program(slurp(std::string(S2L_CORPUS_DIR) + "/" + name));
    std::vector<Diagnostic> probs = validate(p);
    REQUIRE_MESSAGE(probs.empty(), diagnostics_to_string(probs));
    return p;
}

RunResult run_ok(const Program& p, std::uint64_t fuel = 1'000'000) {
    RunOutcome out = run_program(p, fuel);
    REQUIRE(std::holds_alternative<RunResult>(out));
    return std::get<RunResult>(out);
}

} // namespace

TEST_CASE("expression evaluation under an assignment") {
    Assignment sigma{{"x", 3}, {"y", -2}};

    IntExprPtr sum = mk_int_bin(IntOp::Add, mk_var_ref("x"), mk_var_ref("y"));
    CHECK(eval_int(sum, sigma) == 1);
    CHECK(eval_int(mk_int_bin(IntOp::Mul, sum, mk_int_lit(10)), sigma) == 10);

    // x <= 0 in its desugared form !(0 < x)
    BoolExprPtr le0 = mk_not(mk_cmp(CmpOp::Lt, mk_int_lit(0), mk_var_ref("x")));
    CHECK(eval_bool(le0, sigma) == false);
    CHECK(eval_bool(le0, Assignment{{"x", 0}}) == true);
    CHECK(eval_bool(le0, Assignment{{"x", -7}}) == true);

    CHECK(eval_bool(mk_cmp(CmpOp::Eq, mk_var_ref("y"), mk_int_lit(-2)), sigma));
    CHECK(eval_bool(mk_or(mk_bool_lit(false), mk_cmp(CmpOp::Lt, mk_var_ref("y"), mk_int_lit(0))),
                    sigma));

    CHECK_THROWS_AS(eval_int(mk_var_ref("zz"), sigma), EvalError);
    IntExprPtr big = mk_int_bin(IntOp::Add, mk_int_lit(INT64_MAX), mk_int_lit(1));
    CHECK_THROWS_AS(eval_int(big, sigma), EvalError);
    CHECK_THROWS_AS(
        eval_int(mk_int_bin(IntOp::Mul, mk_int_lit(INT64_MIN), mk_int_lit(-1)), sigma),
        EvalError);
}

TEST_CASE("recursive sum program returns 0 and counts four calls") {
    RunResult r = run_ok(load("sum_counted.simp"));
    CHECK(r.ret == 0);
    REQUIRE(r.globals.count("num"));
    CHECK(r.globals.at("num") == 4); // sum(3), sum(2), sum(1), sum(0)
    CHECK(r.globals.size() == 1);
    CHECK(r.steps > 0);
}

TEST_CASE("iterative sum program computes 1+2+3") {
    RunResult r = run_ok(load("sum_iter.simp"));
    CHECK(r.ret == 6);
    CHECK(r.globals.empty());
}

TEST_CASE("two functions sharing a counter: g(3) = 3 * sum1(3)") {
    RunResult r = run_ok(load("shared_counter.simp"));
    CHECK(r.ret == 18);
    CHECK(r.globals.at("num") == 2);
}

TEST_CASE("remaining corpus programs produce the expected results") {
    CHECK(run_ok(load("fact_rec.simp")).ret == 120);
    RunResult ws = run_ok(load("while_sum.simp"));
    CHECK(ws.ret == 10);
    CHECK(ws.globals.at("ticks") == 4);
    CHECK(run_ok(load("mutual.simp")).ret == 1);
    RunResult gp = run_ok(load("globals_pair.simp"));
    CHECK(gp.ret == 10);
    CHECK(gp.globals.at("lo") == 10);
    CHECK(gp.globals.at("hi") == 100);
    CHECK(run_ok(load("no_globals.simp")).ret == 12);
    CHECK(run_ok(load("nested_if.simp")).ret == 16);
    CHECK(run_ok(load("for_sugar.simp")).ret == 8);
    CHECK(run_ok(load("empty_main.simp")).ret == 42);
    CHECK(run_ok(load("straightline.simp")).ret == 20);
    RunResult gr = run_ok(load("global_ret.simp"));
    CHECK(gr.ret == 16);
    CHECK(gr.globals.at("acc") == 16);
    RunResult cg = run_ok(load("call_global_arg.simp"));
    CHECK(cg.ret == 22);
    CHECK(cg.globals.at("base") == 22);
    CHECK(run_ok(load("deep_calls.simp")).ret == 3);
}

TEST_CASE("execution is deterministic and oblivious to extra fuel") {
    Program p = load("sum_counted.simp");
    RunResult a = run_ok(p);
    RunResult b = run_ok(p);
    CHECK(a.ret == b.ret);
    CHECK(a.globals == b.globals);
    CHECK(a.steps == b.steps);

    // exactly a.steps of fuel suffice; one less does not
    RunResult c = run_ok(p, a.steps);
    CHECK(c.steps == a.steps);
    CHECK(c.ret == a.ret);
    CHECK(c.globals == a.globals);
    RunOutcome starved = run_program(p, a.steps - 1);
    REQUIRE(std::holds_alternative<FuelExhausted>(starved));
    CHECK(std::get<FuelExhausted>(starved).steps == a.steps - 1);
}

TEST_CASE("globals keep their domain; locals do not leak") {
    Program p = load("shared_counter.simp");
    RunResult r = run_ok(p);
    REQUIRE(r.globals.size() == 1);
    CHECK(r.globals.count("num") == 1);
}

TEST_CASE("straight-line execution matches hand substitution") {
    // a=3, b=4; a=a*b=12; b=a-b=8; a=a+b=20
    Program p = load("straightline.simp");
    Configuration c;
    c.code = p.functions[0].body;
    ExecOutcome out = exec(c, p);
    REQUIRE(std::holds_alternative<Halted>(out));
    const Halted& h = std::get<Halted>(out);
    CHECK(h.locals.at("a") == 20);
    CHECK(h.locals.at("b") == 8);
    // decl, decl, assign, assign, assign, empty
    CHECK(h.steps == 6);
}

TEST_CASE("an infinite while loop exhausts its fuel") {
    Program p = parse_program("int main() {\n"
                              "  int x = 1;\n"
                              "  while (0 < x) { x = x + 0; }\n"
                              "  return x;\n"
                              "}");
    REQUIRE(validate(p).empty());
    RunOutcome out = run_program(p, 10'000);
    REQUIRE(std::holds_alternative<FuelExhausted>(out));
    CHECK(std::get<FuelExhausted>(out).steps == 10'000);
}

TEST_CASE("runaway recursion is reported as exhaustion, not a crash") {
    Program p = parse_program("int f(int x) {\n"
                              "  int r = 0;\n"
                              "  r = f(x + 1);\n"
                              "  return r;\n"
                              "}\n"
                              "int main() { int r = 0; r = f(0); return r; }");
    REQUIRE(validate(p).empty());
    RunOutcome out = run_program(p);
    CHECK(std::holds_alternative<FuelExhausted>(out));
}

TEST_CASE("arithmetic overflow raises an error rather than wrapping") {
    Program p = parse_program("int main() {\n"
                              "  int x = 9223372036854775807;\n"
                              "  x = x + 1;\n"
                              "  return x;\n"
                              "}");
    REQUIRE(validate(p).empty());
    CHECK_THROWS_AS(run_program(p), EvalError);
}

namespace {
class RuleLog : public Observer {
public:
    std::vector<std::string> rules;
    void on_rule(const std::string& rule, const std::string&, int,
                 const Assignment&, const Assignment&) override {
        rules.push_back(rule);
    }
};
} // namespace

TEST_CASE("the observer sees one event per rule application") {
    Program p = parse_program("int main() {\n"
                              "  int z = 1;\n"
                              "  if (z < 2) { z = 5; } else { }\n"
                              "  while (z < 5) { z = z + 1; }\n"
                              "  return z;\n"
                              "}");
    REQUIRE(validate(p).empty());
    RuleLog log;
    RunOutcome out = run_program(p, 1'000'000, &log);
    RunResult r = std::get<RunResult>(out);
    CHECK(r.ret == 5);
    std::vector<std::string> want{
        "call",        // $ret = main()
        "declare",     // int z = 1
        "if-true",     // z < 2
        "assign-local" /* z = 5 */, "while-false", "empty", // main's frame ends
        "empty",       // entry frame ends
    };
    CHECK(log.rules == want);
    CHECK(r.steps == log.rules.size());
}

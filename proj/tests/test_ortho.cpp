#include "s2l/ortho.hpp"

#include "s2l/theory.hpp"

#include <doctest.h>

using namespace s2l;
using namespace s2l::lctrs;

namespace {

TermPtr ivar(const char* n) { return mk_var(n, sort_int); }

Lctrs base_system() {
    Lctrs sys;
    sys.sorts = {sort_int, sort_bool};
    sys.add_symbol({"f", {sort_int}, sort_int});
    sys.add_symbol({"g", {sort_int}, sort_int});
    return sys;
}

} // namespace

TEST_CASE("unification finds most general unifiers") {
    // f(x, g(y)) =? f(g(z), w)
    Lctrs sys;
    TermPtr a = mk_app("f", sort_int,
                       {ivar("x"), mk_app("g", sort_int, {ivar("y")})});
    TermPtr b = mk_app("f", sort_int,
                       {mk_app("g", sort_int, {ivar("z")}), ivar("w")});
    auto mgu = unify(a, b);
    REQUIRE(mgu);
    CHECK(term_eq(apply_subst(a, *mgu), apply_subst(b, *mgu)));

    CHECK_FALSE(unify(mk_int(1), mk_int(2)));
    CHECK(unify(ivar("x"), ivar("x")));
    // occurs check: x =? f(x)
    CHECK_FALSE(unify(ivar("x"), mk_app("f", sort_int, {ivar("x")})));
    // sorts must match
    CHECK_FALSE(unify(mk_var("p", sort_process), ivar("x")));
}

TEST_CASE("bounded satisfiability") {
    TermPtr x_le_0 = mk_calc(TheoryOp::Le, {ivar("x"), mk_int(0)});
    CHECK(bounded_sat(mk_bool(true)) == SatResult::Sat);
    CHECK(bounded_sat(mk_bool(false)) == SatResult::Unsat);
    CHECK(bounded_sat(x_le_0) == SatResult::Sat);
    // x <= 0 and not (x <= 0): structurally complementary
    CHECK(bounded_sat(mk_calc(TheoryOp::And, {x_le_0, mk_calc(TheoryOp::Not, {x_le_0})})) ==
          SatResult::Unsat);
    // x < 0 and 0 < x is unsatisfiable, but only a bounded search is run
    CHECK(bounded_sat(mk_calc(TheoryOp::And,
                              {mk_calc(TheoryOp::Lt, {ivar("x"), mk_int(0)}),
                               mk_calc(TheoryOp::Lt, {mk_int(0), ivar("x")})})) ==
          SatResult::Unknown);
    // witness only at the box boundary
    CHECK(bounded_sat(mk_calc(TheoryOp::Ge, {ivar("x"), mk_int(64)})) == SatResult::Sat);
    // witness outside the box: honestly unknown
    CHECK(bounded_sat(mk_calc(TheoryOp::Ge, {ivar("x"), mk_int(65)})) == SatResult::Unknown);
    // two integer variables are still enumerable
    CHECK(bounded_sat(mk_calc(TheoryOp::Eq,
                              {mk_calc(TheoryOp::Add, {ivar("x"), ivar("y")}), mk_int(7)})) ==
          SatResult::Sat);
    // boolean variables
    CHECK(bounded_sat(mk_calc(TheoryOp::And, {mk_var("p", sort_bool),
                                              mk_calc(TheoryOp::Not, {mk_var("q", sort_bool)})})) ==
          SatResult::Sat);
    // three integer variables exceed the search space
    CHECK(bounded_sat(mk_calc(TheoryOp::Eq,
                              {mk_calc(TheoryOp::Add,
                                       {mk_calc(TheoryOp::Add, {ivar("x"), ivar("y")}),
                                        ivar("z")}),
                               mk_int(0)})) == SatResult::Unknown);
}

TEST_CASE("constraint-guarded pairs with complementary constraints are orthogonal") {
    Lctrs sys = base_system();
    TermPtr x_le_0 = mk_calc(TheoryOp::Le, {ivar("x"), mk_int(0)});
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}), mk_int(1), x_le_0});
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}), mk_int(2),
                         mk_calc(TheoryOp::Not, {x_le_0})});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::Orthogonal);
    CHECK(rep.findings.empty());
}

TEST_CASE("unconstrained duplicate left-hand sides overlap") {
    Lctrs sys = base_system();
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}), mk_int(1), mk_bool(true)});
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}), mk_int(2), mk_bool(true)});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::NotOrthogonal);
    REQUIRE_FALSE(rep.findings.empty());
    bool found = false;
    for (const auto& f : rep.findings) {
        if (f.kind == OrthoFinding::Overlap && f.pos.empty()) found = true;
    }
    CHECK(found);
}

TEST_CASE("non-left-linear rules are flagged") {
    Lctrs sys = base_system();
    sys.add_symbol({"pair", {sort_int, sort_int}, sort_int});
    sys.rules.push_back({mk_app("pair", sort_int, {ivar("x"), ivar("x")}), ivar("x"),
                         mk_bool(true)});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::NotOrthogonal);
    REQUIRE(rep.findings.size() == 1);
    CHECK(rep.findings[0].kind == OrthoFinding::NotLeftLinear);
}

TEST_CASE("overlaps below the root are found") {
    // f(g(x)) -> x and g(x) -> x overlap at position 1 of the first rule
    Lctrs sys = base_system();
    sys.rules.push_back({mk_app("f", sort_int, {mk_app("g", sort_int, {ivar("x")})}),
                         ivar("x"), mk_bool(true)});
    sys.rules.push_back({mk_app("g", sort_int, {ivar("x")}), ivar("x"), mk_bool(true)});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::NotOrthogonal);
    bool found = false;
    for (const auto& f : rep.findings) {
        if (f.kind == OrthoFinding::Overlap && f.rule_a == 1 && f.rule_b == 0 &&
            f.pos == Position{1}) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("theory subterms in a left-hand side overlap the calculation rules") {
    Lctrs sys = base_system();
    sys.rules.push_back(
        {mk_app("f", sort_int, {mk_calc(TheoryOp::Add, {ivar("x"), ivar("y")})}),
         ivar("x"), mk_bool(true)});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::NotOrthogonal);
    REQUIRE_FALSE(rep.findings.empty());
    CHECK(rep.findings[0].kind == OrthoFinding::CalcOverlap);
    CHECK(rep.findings[0].pos == Position{1});
}

TEST_CASE("undecided constraint compatibility is reported, not swallowed") {
    Lctrs sys = base_system();
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}), mk_int(1),
                         mk_calc(TheoryOp::Lt, {ivar("x"), mk_int(-100)})});
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}), mk_int(2),
                         mk_calc(TheoryOp::Lt, {mk_int(100), ivar("x")})});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::Unknown);
    REQUIRE_FALSE(rep.findings.empty());
    CHECK(rep.findings[0].kind == OrthoFinding::UnknownOverlap);
}

TEST_CASE("variable positions do not create overlaps") {
    // f(x) -> g(x) and g(x) -> 0: no overlap (x is a variable position)
    Lctrs sys = base_system();
    sys.rules.push_back({mk_app("f", sort_int, {ivar("x")}),
                         mk_app("g", sort_int, {ivar("x")}), mk_bool(true)});
    sys.rules.push_back({mk_app("g", sort_int, {ivar("x")}), mk_int(0), mk_bool(true)});
    OrthoReport rep = check_orthogonal(sys);
    CHECK(rep.status == OrthoStatus::Orthogonal);
}

#include "s2l/term.hpp"

#include "s2l/diag.hpp"

#include <doctest.h>

using namespace s2l;
using namespace s2l::lctrs;

namespace {
// stack(u1(x, z), s) with the sorts used by the translation
TermPtr sample() {
    return mk_app("stack", sort_process,
                  {mk_app("u1", sort_state, {mk_var("x", sort_int), mk_var("z", sort_int)}),
                   mk_var("s", sort_process)});
}
} // namespace

TEST_CASE("sorts and classification") {
    TermPtr t = sample();
    CHECK(t->sort() == sort_process);
    CHECK_FALSE(t->is_value());
    CHECK_FALSE(t->is_theory());
    CHECK_FALSE(t->is_ground());
    CHECK(mk_int(3)->is_value());
    CHECK(mk_int(3)->is_theory());
    CHECK(mk_bool(true)->is_value());
    TermPtr add = mk_calc(TheoryOp::Add, {mk_var("x", sort_int), mk_int(1)});
    CHECK(add->is_theory());
    CHECK_FALSE(add->is_ground());
    CHECK(add->sort() == sort_int);
}

TEST_CASE("positions address subterms with 1-based paths") {
    TermPtr t = sample();
    CHECK(term_eq(subterm_at(t, {}), t));
    CHECK(subterm_at(t, {1})->as_app()->symbol == "u1");
    CHECK(subterm_at(t, {1, 2})->as_var()->name == "z");
    CHECK(subterm_at(t, {2})->as_var()->name == "s");
    CHECK_THROWS_AS(subterm_at(t, {3}), EvalError);
    CHECK(position_str({}) == "e");
    CHECK(position_str({1, 2}) == "1.2");

    TermPtr replaced = replace_at(t, {1, 2}, mk_int(0));
    CHECK(subterm_at(replaced, {1, 2})->as_int()->value == 0);
    // the original is untouched
    CHECK(subterm_at(t, {1, 2})->as_var()->name == "z");
}

TEST_CASE("variable collection keeps first-occurrence order") {
    TermPtr t = sample();
    auto vars = vars_of(t);
    REQUIRE(vars.size() == 3);
    CHECK(vars[0].name == "x");
    CHECK(vars[1].name == "z");
    CHECK(vars[2].name == "s");
    CHECK(has_var(t, "s"));
    CHECK_FALSE(has_var(t, "y"));
}

TEST_CASE("linearity") {
    CHECK(is_linear(sample()));
    TermPtr nonlinear =
        mk_app("f", sort_state, {mk_var("x", sort_int), mk_var("x", sort_int)});
    CHECK_FALSE(is_linear(nonlinear));
}

TEST_CASE("substitution replaces free variables everywhere") {
    TermPtr t = sample();
    Subst s{{"x", mk_int(3)}, {"s", mk_app("bot", sort_process, {})}};
    TermPtr r = apply_subst(t, s);
    CHECK(subterm_at(r, {1, 1})->as_int()->value == 3);
    CHECK(subterm_at(r, {2})->as_app()->symbol == "bot");
    CHECK(subterm_at(r, {1, 2})->as_var()->name == "z");
}

TEST_CASE("structural equality is deep") {
    CHECK(term_eq(sample(), sample()));
    CHECK_FALSE(term_eq(sample(), mk_var("s", sort_process)));
    CHECK_FALSE(term_eq(mk_int(1), mk_int(2)));
    CHECK_FALSE(term_eq(mk_int(1), mk_bool(true)));
    CHECK_FALSE(term_eq(mk_var("x", sort_int), mk_var("x", sort_bool)));
}

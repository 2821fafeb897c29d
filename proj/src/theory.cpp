#include "s2l/theory.hpp"

#include "s2l/diag.hpp"

#include <limits>

namespace s2l::lctrs {

namespace {
[[noreturn]] void overflow(const char* what) {
    throw EvalError(std::string("integer overflow in ") + what);
}
} // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) overflow("+");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) overflow("-");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) overflow("*");
    return r;
}

std::int64_t checked_exp(std::int64_t a, std::int64_t b) {
    if (b < 0) return 0;
    std::int64_t result = 1;
    std::int64_t base = a;
    std::int64_t e = b;
    while (e > 0) {
        if (e & 1) result = checked_mul(result, base);
        e >>= 1;
        if (e > 0) base = checked_mul(base, base);
    }
    return result;
}

std::int64_t checked_div(std::int64_t a, std::int64_t b) {
    if (b == 0) return 0;
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1) overflow("div");
    return a / b;
}

std::int64_t checked_mod(std::int64_t a, std::int64_t b) {
    if (b == 0) return 0;
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return 0;
    return a % b;
}

namespace {

std::int64_t as_int_value(const TermPtr& t) {
    TermPtr v = interpret_theory(t);
    if (const IntVal* n = v->as_int()) return n->value;
    throw EvalError("expected an int-sorted theory term");
}

bool as_bool_value(const TermPtr& t) {
    TermPtr v = interpret_theory(t);
    if (const BoolVal* b = v->as_bool()) return b->value;
    throw EvalError("expected a bool-sorted theory term");
}

} // namespace

TermPtr interpret_theory(const TermPtr& t) {
    if (t->as_int() || t->as_bool()) return t;
    if (t->as_var()) throw EvalError("cannot interpret non-ground term");
    const Calc* c = t->as_calc();
    if (!c) throw EvalError("cannot interpret non-theory term");
    switch (c->op) {
    case TheoryOp::Add: return mk_int(checked_add(as_int_value(c->args[0]), as_int_value(c->args[1])));
    case TheoryOp::Sub: return mk_int(checked_sub(as_int_value(c->args[0]), as_int_value(c->args[1])));
    case TheoryOp::Mul: return mk_int(checked_mul(as_int_value(c->args[0]), as_int_value(c->args[1])));
    case TheoryOp::Exp: return mk_int(checked_exp(as_int_value(c->args[0]), as_int_value(c->args[1])));
    case TheoryOp::Div: return mk_int(checked_div(as_int_value(c->args[0]), as_int_value(c->args[1])));
    case TheoryOp::Mod: return mk_int(checked_mod(as_int_value(c->args[0]), as_int_value(c->args[1])));
    case TheoryOp::Ge: return mk_bool(as_int_value(c->args[0]) >= as_int_value(c->args[1]));
    case TheoryOp::Gt: return mk_bool(as_int_value(c->args[0]) > as_int_value(c->args[1]));
    case TheoryOp::Lt: return mk_bool(as_int_value(c->args[0]) < as_int_value(c->args[1]));
    case TheoryOp::Le: return mk_bool(as_int_value(c->args[0]) <= as_int_value(c->args[1]));
    case TheoryOp::Eq:
    case TheoryOp::Ne: {
        TermPtr a = interpret_theory(c->args[0]);
        TermPtr b = interpret_theory(c->args[1]);
        bool eq;
        if (a->as_int() && b->as_int()) {
            eq = a->as_int()->value == b->as_int()->value;
        } else if (a->as_bool() && b->as_bool()) {
            eq = a->as_bool()->value == b->as_bool()->value;
        } else {
            throw EvalError("ill-sorted equality");
        }
        return mk_bool(c->op == TheoryOp::Eq ? eq : !eq);
    }
    case TheoryOp::And: return mk_bool(as_bool_value(c->args[0]) && as_bool_value(c->args[1]));
    case TheoryOp::Or: return mk_bool(as_bool_value(c->args[0]) || as_bool_value(c->args[1]));
    case TheoryOp::Imp: return mk_bool(!as_bool_value(c->args[0]) || as_bool_value(c->args[1]));
    case TheoryOp::Not: return mk_bool(!as_bool_value(c->args[0]));
    }
    throw EvalError("unknown theory symbol");
}

bool interpret_constraint(const TermPtr& t) {
    TermPtr v = interpret_theory(t);
    const BoolVal* b = v->as_bool();
    if (!b) throw EvalError("constraint is not bool-sorted");
    return b->value;
}

} // namespace s2l::lctrs

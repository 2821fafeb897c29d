#pragma once

#include "s2l/term.hpp"

#include <cstdint>

namespace s2l::lctrs {

// Checked 64-bit integer arithmetic. Overflow raises EvalError; the partial
// cases of the mathematical operations are totalized instead:
//   div(n, 0) = mod(n, 0) = 0, exp(n, k) = 0 for k < 0.
// div/mod truncate toward zero (C semantics), exp(0, 0) = 1.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_exp(std::int64_t a, std::int64_t b);
std::int64_t checked_div(std::int64_t a, std::int64_t b);
std::int64_t checked_mod(std::int64_t a, std::int64_t b);

// Interpretation of a ground theory term as a value term (IntVal/BoolVal).
// Raises EvalError on non-ground or non-theory input and on overflow.
TermPtr interpret_theory(const TermPtr& t);

// Interpretation of a ground bool-sorted theory term as a C++ bool.
bool interpret_constraint(const TermPtr& t);

} // namespace s2l::lctrs

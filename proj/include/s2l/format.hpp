#pragma once

#include "s2l/lctrs.hpp"
#include "s2l/term.hpp"

#include <string>

namespace s2l::lctrs {

// Text format for constrained rewriting systems, one declaration per line:
//
//   # comment
//   sorts bool int process
//   symbol fact : int => int [terms]
//   symbol bot : process [terms]
//   rule fact(x) -> 1 [x <= 0]
//   rule fact(x) -> x * fact(x - 1) [not (x <= 0)]
//
// Terms use infix theory symbols with the precedence (tightest first):
//   not | * div mod | + - | = != < <= > >= | and | or | =>
// exp is written as a call: exp(a, b). A `-` directly before an integer
// literal in operand position denotes a negative literal. Identifiers that
// are not declared symbols are variables; their sorts are inferred from
// context. An omitted rule constraint means [true].
//
// emit is canonical: sorts and symbols are listed alphabetically, rules keep
// declaration order, and parse(emit(R)) == R.

std::string emit(const Lctrs& sys);
Lctrs parse_lctrs(const std::string& text);

// One term in the signature of `sys`; used for rewrite start terms.
TermPtr parse_term_in(const std::string& text, const Lctrs& sys);

std::string term_to_string(const TermPtr& t);

} // namespace s2l::lctrs

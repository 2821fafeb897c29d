#pragma once

#include "s2l/ast.hpp"
#include "s2l/lctrs.hpp"

namespace s2l::trans {

// Fault injections for differential testing: each produces a well-formed
// but wrong system.
enum class Mutation {
    None,
    // Emit assignment rules without the env context, losing global effects.
    DropEnvWrapper,
    // Swap the constraints of the two rules of every if.
    SwapIfConstraints,
    // Emit pop rules that discard the returned value instead of storing it.
    OmitPopSubstitution,
};

struct TransOptions {
    Mutation mutation = Mutation::None;
    // Always wrap push and pop rules in the env context, making stack behave
    // like a constructor that only ever appears under env.
    bool constructor_stack = false;
};

// Translate a validated program into a constrained rewriting system over the
// sorts {int, bool, state, env, process}:
//
//   env : int^k * process => env     (k = number of globals)
//   stack : state * process => process
//   bot : process
//   return : int => state
//   f : int^n => state               (one per function)
//   u1, u2, ...                      (one per program point, one counter
//                                     shared by all functions)
//
// Every function begins at f(params) and ends in a rule producing
// return(e). Statements become rules between numbered program points;
// rules that read or write globals carry the env(x1..xk, stack(_, s))
// context, calls push a continuation frame onto the stack and returns pop
// it. Runs of the system simulate runs of the program step for step.
lctrs::Lctrs conv(const syntax::Program& p, const TransOptions& opts = {});

// env(n1, ..., nk, stack(main, bot)) with the declared global initializers.
lctrs::TermPtr initial_term(const syntax::Program& p);

// The normal form a halting run must reach: env(g1..gk, stack(return(n), bot)).
lctrs::TermPtr final_term(const std::vector<std::int64_t>& globals, std::int64_t ret);

} // namespace s2l::trans

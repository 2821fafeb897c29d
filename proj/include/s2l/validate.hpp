#pragma once

#include "s2l/ast.hpp"

#include <vector>

namespace s2l::syntax {

// Static checks a program must pass before it can be run or translated:
//
//  - global, function, parameter and local names are pairwise sensible:
//    no duplicate globals/functions/parameters, and one flat identifier
//    namespace (a variable may not reuse a function name);
//  - locals are disjoint from globals and parameters, and a declaration may
//    not shadow a local that is still in scope. Scoping is lexical: a local
//    lives from its declaration to the end of the enclosing block, so branch
//    locals die at the join;
//  - every variable read or assigned is in scope;
//  - every call names a defined function with the right number of arguments;
//  - there is exactly one zero-parameter function main;
//  - the names env, stack, bot, main (as a variable) and u<digits> are
//    reserved for the translation and cannot name user variables or
//    functions, except that main must name the entry function.
std::vector<Diagnostic> validate(const Program& p);

} // namespace s2l::syntax

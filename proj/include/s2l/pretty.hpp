#pragma once

#include "s2l/ast.hpp"

#include <string>

namespace s2l::syntax {

// Print a program back as parseable source. Only core forms are emitted
// (==, <, !, ||, while), so parse(pretty(p)) == p up to source locations.
std::string pretty(const Program& p);
std::string pretty(const IntExprPtr& e);
std::string pretty(const BoolExprPtr& e);

} // namespace s2l::syntax

#pragma once

#include "s2l/diag.hpp"
#include "s2l/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace s2l::lctrs {

// A rule lhs -> rhs [constraint]. The constraint is a bool-sorted theory
// term; an unconstrained rule stores the literal true. Variables occurring
// in the constraint or only in the rhs are the rule's logical variables and
// are instantiated with values during rewriting.
struct ConstrainedRule {
    TermPtr lhs;
    TermPtr rhs;
    TermPtr constraint;

    bool is_unconstrained() const {
        const BoolVal* b = constraint->as_bool();
        return b && b->value;
    }
    // Var(constraint) + (Var(rhs) \ Var(lhs)), by first occurrence.
    std::vector<std::string> logical_vars() const;
    bool left_linear() const { return is_linear(lhs); }
};

bool rule_eq(const ConstrainedRule& a, const ConstrainedRule& b);

// Declaration of one term symbol: name : args[0] * ... * args[n-1] => result.
struct SymbolDecl {
    std::string name;
    std::vector<Sort> args;
    Sort result;
    bool operator==(const SymbolDecl&) const = default;
};

// A logically constrained term rewriting system over the fixed int/bool
// theory: the declared sorts, the term signature, and the rules in
// declaration order. Sorts and symbols are kept sorted by name so that two
// systems with the same content compare equal.
struct Lctrs {
    std::vector<Sort> sorts;
    std::vector<SymbolDecl> symbols;
    std::vector<ConstrainedRule> rules;

    const SymbolDecl* find_symbol(const std::string& name) const;
    void add_sort(const Sort& s);          // idempotent, keeps order
    void add_symbol(const SymbolDecl& d);  // throws on conflicting re-declaration
    void normalize();                      // sort the sorts/symbols by name

    // Identifier for rule i in traces and error messages, e.g. "r3:u2".
    std::string rule_id(size_t i) const;

    // Static well-formedness: symbols declared, arities and sorts respected,
    // lhs is rooted in a term symbol and is not a variable.
    std::vector<Diagnostic> validate() const;
};

bool lctrs_eq(const Lctrs& a, const Lctrs& b);

} // namespace s2l::lctrs

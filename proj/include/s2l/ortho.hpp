#pragma once

#include "s2l/lctrs.hpp"
#include "s2l/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace s2l::lctrs {

// Syntactic unification; variables bind only to terms of their sort, with
// occurs check. Returns the most general unifier or nullopt.
std::optional<Subst> unify(const TermPtr& a, const TermPtr& b);

enum class SatResult { Sat, Unsat, Unknown };

// Satisfiability of a bool-sorted theory term over value assignments.
// Ground constraints are evaluated exactly. A conjunction containing both
// psi and (not psi) is recognized as unsatisfiable structurally. Otherwise
// the checker enumerates assignments with every integer variable in
// [-bound, bound] (at most 2 integer and 4 boolean variables); a witness is
// a definite Sat, exhaustion without one is Unknown, never Unsat.
SatResult bounded_sat(const TermPtr& constraint, std::int64_t bound = 64);

enum class OrthoStatus { Orthogonal, NotOrthogonal, Unknown };

struct OrthoFinding {
    enum Kind { NotLeftLinear, Overlap, CalcOverlap, UnknownOverlap } kind;
    int rule_a = -1;       // index into sys.rules
    int rule_b = -1;       // -1 for NotLeftLinear / CalcOverlap
    Position pos;          // where rule_a's lhs overlaps inside rule_b's lhs
    std::string description;
};

struct OrthoReport {
    OrthoStatus status = OrthoStatus::Orthogonal;
    std::vector<OrthoFinding> findings;
    bool orthogonal() const { return status == OrthoStatus::Orthogonal; }
    std::string str() const;
};

// Orthogonality = left-linearity + no critical overlaps. Overlaps are
// searched at the root between distinct rules and at proper non-variable
// positions for every ordered pair (rules renamed apart), including each
// rule against itself. A unifiable pair only counts as an overlap when the
// conjunction of the instantiated constraints is satisfiable; pairs whose
// satisfiability cannot be decided are reported as Unknown, never silently
// dropped. Positions where a left-hand side contains a potential
// calculation redex overlap with the implicit calculation rules.
OrthoReport check_orthogonal(const Lctrs& sys);

} // namespace s2l::lctrs

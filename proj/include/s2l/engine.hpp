#pragma once

#include "s2l/lctrs.hpp"
#include "s2l/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace s2l::lctrs {

// Syntactic matching: find s with pattern*s == subject. Patterns may be
// non-linear; repeated variables must match equal subterms.
std::optional<Subst> match(const TermPtr& pattern, const TermPtr& subject);

// Check whether `rule` applies to `subject` at position `pos`: the lhs must
// match, the rule's logical variables must be bound to values by the match,
// and the instantiated constraint must evaluate to true. The engine only
// runs rules whose logical variables all occur in the lhs, so the returned
// substitution is exactly the matcher.
std::optional<Subst> rule_applies(const ConstrainedRule& rule, const TermPtr& subject,
                                  const Position& pos);

// One redex: either a calculation step (rule_index == kCalcStep) or an
// application of rules[rule_index].
inline constexpr int kCalcStep = -1;
struct Redex {
    Position pos;
    int rule_index = kCalcStep;
};

// Deterministic strategy:
//   1. if any calculation redex exists (a theory symbol whose arguments are
//      all values), take the leftmost-innermost one;
//   2. otherwise collect all (position, rule) pairs that apply; none = normal
//      form, exactly one = the step, two or more = AmbiguousRedex error.
// Throws EngineError for rules the engine cannot execute (variables of the
// rhs or constraint that do not occur in the lhs) and on ambiguity.
std::optional<Redex> find_redex(const TermPtr& t, const Lctrs& sys);

struct TraceStep {
    Position pos;
    int rule_index; // kCalcStep for calculation steps
    std::string rule_id;
    TermPtr result;
};

struct Trace {
    TermPtr initial;
    std::vector<TraceStep> steps;
};

enum class RewriteStatus { NormalForm, FuelExhausted };

struct RewriteResult {
    RewriteStatus status;
    TermPtr term;           // normal form, or last term when fuel ran out
    std::uint64_t steps;
    Trace trace;            // filled only when requested
};

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

RewriteResult rewrite_to_nf(const TermPtr& t, const Lctrs& sys,
                            std::uint64_t fuel = kDefaultFuel, bool keep_trace = false);

// Rejects systems containing rules whose rhs or constraint has variables not
// bound by the lhs (the engine cannot invent values). Called by find_redex;
// exposed for direct use and testing.
void reject_unsupported_rules(const Lctrs& sys);

} // namespace s2l::lctrs

#pragma once

#include "s2l/ast.hpp"
#include "s2l/gen.hpp"
#include "s2l/transform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace s2l::difftest {

enum class VerdictKind { Agree, Disagree, Inconclusive };

const char* verdict_name(VerdictKind k);
const char* mutation_name(trans::Mutation m);
// Accepts none | drop-env | swap-if | omit-pop; throws Error otherwise.
trans::Mutation mutation_from_name(const std::string& name);

struct Verdict {
    VerdictKind kind;
    std::string detail;
    std::uint64_t interp_steps = 0;
    std::uint64_t rewrite_steps = 0;
};

// Run the program twice: big-step interpretation, and ground rewriting of
// the translated system from env(g1..gk, stack(main, bot)). Agree means the
// rewrite ended in env(g1'..gk', stack(return(n), bot)) with exactly the
// interpreter's final globals and return value. Either side running out of
// fuel is Inconclusive; everything else (different normal form, stuck term,
// engine or calculation error during rewriting) is a disagreement.
//
// `fuel` is the interpreter's budget in big-step rule applications; the
// rewriter gets a proportional budget (a big step costs one rule step plus
// a few calculation steps).
Verdict check_program(const syntax::Program& p, const trans::TransOptions& topts = {},
                      std::uint64_t fuel = 100'000);

// Greedily shrink p while it still validates and check_program still
// disagrees: drop functions, globals and statements, splice out branches,
// and shrink literals and expressions. Deterministic.
syntax::Program minimize(const syntax::Program& p, const trans::TransOptions& topts = {},
                         std::uint64_t fuel = 100'000);

struct CampaignConfig {
    gen::GenConfig gen; // gen.seed is the first seed; seeds are consecutive
    int count = 200;
    trans::TransOptions trans;
    std::uint64_t fuel = 100'000;
    std::string artifact_dir; // when set, disagreements are written here
};

struct SeedOutcome {
    std::uint64_t seed;
    VerdictKind kind;
    std::string detail;
};

struct CampaignResult {
    int agree = 0;
    int disagree = 0;
    int inconclusive = 0;
    std::vector<SeedOutcome> outcomes;
    std::vector<std::uint64_t> disagree_seeds;
    std::string first_disagreement; // minimized source of the first one
};

CampaignResult run_campaign(const CampaignConfig& cfg);

// Machine-readable report of a finished campaign.
std::string campaign_json(const CampaignConfig& cfg, const CampaignResult& r);

} // namespace s2l::difftest

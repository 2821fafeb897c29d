#pragma once

#include "s2l/ast.hpp"

#include <cstdint>

namespace s2l::gen {

// Deterministic splittable PRNG (SplitMix64). Hand-rolled on purpose:
// std::uniform_int_distribution is implementation-defined, and generated
// programs must be byte-identical for a given seed on every toolchain.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : x_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (x_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform enough in [0, n) for test-case generation; n must be > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Integer in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t x_;
};

struct GenConfig {
    std::uint64_t seed = 1;
    int globals = 1;        // exact number of globals
    int max_functions = 3;  // besides main
    int max_stmts = 4;      // per block
    int max_expr_depth = 2;
    bool allow_mul = true;
};

// Generate a random program that always validates and always halts (modulo
// arithmetic overflow): while loops count a protected local down to zero,
// recursion is self-recursion guarded by a decreasing first parameter, and
// all other calls go to earlier functions. main folds every variable it can
// see into its return value so that lost updates stay observable.
syntax::Program gen_program(const GenConfig& cfg);

} // namespace s2l::gen

#pragma once

#include "s2l/ast.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace s2l::interp {

// A partial assignment of integer values to variable names. Globals and
// locals are kept in two disjoint assignments, mirroring the split
// configurations of the semantics.
using Assignment = std::map<std::string, std::int64_t>;

// Expression evaluation under one merged assignment. Unbound variables and
// arithmetic overflow raise EvalError.
std::int64_t eval_int(const syntax::IntExprPtr& e, const Assignment& sigma);
bool eval_bool(const syntax::BoolExprPtr& e, const Assignment& sigma);

struct Configuration {
    syntax::StmtSeq code;
    Assignment globals;
    Assignment locals;
};

// Observation hook for executions; pre-state of each rule application.
class Observer {
public:
    virtual ~Observer() = default;
    virtual void on_rule(const std::string& rule, const std::string& stmt, int depth,
                         const Assignment& globals, const Assignment& locals) = 0;
};

struct ExecOptions {
    std::uint64_t fuel = 1'000'000;
    // Guard against runaway recursion blowing the host stack; hitting it is
    // reported as fuel exhaustion (the program did not finish within the
    // given resources).
    int max_call_depth = 10'000;
    Observer* observer = nullptr;
};

struct Halted {
    Assignment globals;
    Assignment locals;
    std::uint64_t steps; // big-step rule applications used
};
struct FuelExhausted {
    std::uint64_t steps;
};
using ExecOutcome = std::variant<Halted, FuelExhausted>;

// Execute a statement sequence to completion under the program's function
// table. One unit of fuel pays for one big-step rule application (empty
// sequence, declaration, assignment, call, if with either verdict, while
// with either verdict).
ExecOutcome exec(const Configuration& c, const syntax::Program& p,
                 const ExecOptions& opts = {});

struct RunResult {
    std::int64_t ret;
    Assignment globals;
    std::uint64_t steps;
};
using RunOutcome = std::variant<RunResult, FuelExhausted>;

// Whole-program execution: initialize the globals, run main, return its
// value and the final globals.
RunOutcome run_program(const syntax::Program& p, std::uint64_t fuel = 1'000'000,
                       Observer* observer = nullptr);

} // namespace s2l::interp

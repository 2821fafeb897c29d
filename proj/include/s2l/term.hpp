#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace s2l::lctrs {

// Sorts are interned by name. "int" and "bool" are the theory sorts; every
// other sort is a plain term sort (here: state, env, process).
struct Sort {
    std::string name;
    bool operator==(const Sort&) const = default;
    bool operator<(const Sort& o) const { return name < o.name; }
};

inline const Sort sort_int{"int"};
inline const Sort sort_bool{"bool"};
inline const Sort sort_state{"state"};
inline const Sort sort_env{"env"};
inline const Sort sort_process{"process"};

inline bool is_theory_sort(const Sort& s) { return s == sort_int || s == sort_bool; }

// The fixed theory signature over the integers and booleans.
enum class TheoryOp {
    Add, Sub, Mul, Exp, Div, Mod,    // int * int => int
    Ge, Gt, Lt, Le,                  // int * int => bool
    Eq, Ne,                          // t * t => bool, t in {int, bool}
    And, Or, Imp,                    // bool * bool => bool
    Not,                             // bool => bool
};

int op_arity(TheoryOp op);
Sort op_result_sort(TheoryOp op);
// Argument sort; for Eq/Ne (overloaded) this returns int, callers that care
// about the bool overload must inspect the arguments.
Sort op_arg_sort(TheoryOp op);
const char* op_name(TheoryOp op); // surface syntax: "+", "div", "<=", ...
std::optional<TheoryOp> op_from_name(const std::string& name);

class Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
    std::string name;
    Sort sort;
};
struct IntVal {
    std::int64_t value;
};
struct BoolVal {
    bool value;
};
// Application of a theory (calculation) symbol.
struct Calc {
    TheoryOp op;
    std::vector<TermPtr> args;
};
// Application of a term symbol from the user signature.
struct App {
    std::string symbol;
    Sort sort; // result sort
    std::vector<TermPtr> args;
};

class Term {
public:
    using Node = std::variant<Var, IntVal, BoolVal, Calc, App>;

    explicit Term(Node n) : node_(std::move(n)) {}

    const Node& node() const { return node_; }

    const Var* as_var() const { return std::get_if<Var>(&node_); }
    const IntVal* as_int() const { return std::get_if<IntVal>(&node_); }
    const BoolVal* as_bool() const { return std::get_if<BoolVal>(&node_); }
    const Calc* as_calc() const { return std::get_if<Calc>(&node_); }
    const App* as_app() const { return std::get_if<App>(&node_); }

    Sort sort() const;
    bool is_value() const { return as_int() || as_bool(); }
    // Built from variables, values and calculation symbols only.
    bool is_theory() const;
    bool is_ground() const;
    const std::vector<TermPtr>& args() const; // empty for leaves
    size_t node_count() const;

private:
    Node node_;
};

TermPtr mk_var(std::string name, Sort sort);
TermPtr mk_int(std::int64_t v);
TermPtr mk_bool(bool v);
TermPtr mk_calc(TheoryOp op, std::vector<TermPtr> args);
TermPtr mk_app(std::string symbol, Sort sort, std::vector<TermPtr> args);

bool term_eq(const TermPtr& a, const TermPtr& b);

// A position is a path of 1-based child indices; {} is the root.
using Position = std::vector<int>;
std::string position_str(const Position& p);
TermPtr subterm_at(const TermPtr& t, const Position& p);
TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& repl);

// Variables in order of first occurrence (left-to-right, outside-in).
std::vector<Var> vars_of(const TermPtr& t);
bool has_var(const TermPtr& t, const std::string& name);
bool is_linear(const TermPtr& t); // no variable occurs twice

using Subst = std::map<std::string, TermPtr>;
TermPtr apply_subst(const TermPtr& t, const Subst& s);

// Uniformly rename variables: name -> new name (used for canonical forms and
// for renaming rules apart). Names missing from the map are kept.
TermPtr rename_vars(const TermPtr& t, const std::map<std::string, std::string>& renaming);

} // namespace s2l::lctrs

#pragma once

#include "s2l/diag.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

// Abstract syntax for the imperative source language: integer globals with
// initializers, functions over integer parameters with integer locals, and
// statements built from assignments, calls, conditionals and loops. Every
// function ends in `return e;`. The parser desugars the surface extensions
// (!=, <=, >, >=, &&, =>, for, else-less if) into this core, so consumers
// only ever see ==, <, !, || and while.

namespace s2l::syntax {

struct IntExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;

enum class IntOp { Add, Sub, Mul };

struct IntLit {
    std::int64_t value;
};
struct VarRef {
    std::string name;
};
struct IntBin {
    IntOp op;
    IntExprPtr lhs;
    IntExprPtr rhs;
};

struct IntExpr {
    std::variant<IntLit, VarRef, IntBin> node;
    SourceLoc loc;
};

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

enum class CmpOp { Eq, Lt };

struct BoolLit {
    bool value;
};
struct Cmp {
    CmpOp op;
    IntExprPtr lhs;
    IntExprPtr rhs;
};
struct Not {
    BoolExprPtr arg;
};
struct Or {
    BoolExprPtr lhs;
    BoolExprPtr rhs;
};

struct BoolExpr {
    std::variant<BoolLit, Cmp, Not, Or> node;
    SourceLoc loc;
};

struct Stmt;
using StmtSeq = std::vector<Stmt>;

// int v = n;
struct LocalDecl {
    std::string name;
    std::int64_t init;
};
// v = e;
struct Assign {
    std::string name;
    IntExprPtr value;
};
// v = f(e1, ..., en);  -- calls only occur here
struct CallAssign {
    std::string name;
    std::string callee;
    std::vector<IntExprPtr> args;
};
struct If {
    BoolExprPtr cond;
    StmtSeq then_body;
    StmtSeq else_body;
};
struct While {
    BoolExprPtr cond;
    StmtSeq body;
};

struct Stmt {
    std::variant<LocalDecl, Assign, CallAssign, If, While> node;
    SourceLoc loc;
};

struct FunDef {
    std::string name;
    std::vector<std::string> params;
    StmtSeq body;
    IntExprPtr return_expr;
    SourceLoc loc;
};

struct Global {
    std::string name;
    std::int64_t init;
    SourceLoc loc;
};

struct Program {
    std::vector<Global> globals;
    std::vector<FunDef> functions;

    const FunDef* find_function(const std::string& name) const;
    bool is_global(const std::string& name) const;
};

IntExprPtr mk_int_lit(std::int64_t v, SourceLoc loc = {});
IntExprPtr mk_var_ref(std::string name, SourceLoc loc = {});
IntExprPtr mk_int_bin(IntOp op, IntExprPtr l, IntExprPtr r, SourceLoc loc = {});
BoolExprPtr mk_bool_lit(bool v, SourceLoc loc = {});
BoolExprPtr mk_cmp(CmpOp op, IntExprPtr l, IntExprPtr r, SourceLoc loc = {});
BoolExprPtr mk_not(BoolExprPtr e, SourceLoc loc = {});
BoolExprPtr mk_or(BoolExprPtr l, BoolExprPtr r, SourceLoc loc = {});

// Structural equality, ignoring source locations.
bool expr_eq(const IntExprPtr& a, const IntExprPtr& b);
bool expr_eq(const BoolExprPtr& a, const BoolExprPtr& b);
bool stmt_eq(const Stmt& a, const Stmt& b);
bool seq_eq(const StmtSeq& a, const StmtSeq& b);
bool program_eq(const Program& a, const Program& b);

// Variables read by an expression / statement sequence, first-occurrence order.
std::vector<std::string> vars_read(const IntExprPtr& e);
void collect_vars_read(const BoolExprPtr& e, std::vector<std::string>& out);

} // namespace s2l::syntax

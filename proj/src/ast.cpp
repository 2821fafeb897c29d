#include "s2l/ast.hpp"

#include <algorithm>

namespace s2l::syntax {

const FunDef* Program::find_function(const std::string& name) const {
    for (const auto& f : functions) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

bool Program::is_global(const std::string& name) const {
    for (const auto& g : globals) {
        if (g.name == name) return true;
    }
    return false;
}

IntExprPtr mk_int_lit(std::int64_t v, SourceLoc loc) {
    return std::make_shared<IntExpr>(IntExpr{IntLit{v}, loc});
}
IntExprPtr mk_var_ref(std::string name, SourceLoc loc) {
    return std::make_shared<IntExpr>(IntExpr{VarRef{std::move(name)}, loc});
}
IntExprPtr mk_int_bin(IntOp op, IntExprPtr l, IntExprPtr r, SourceLoc loc) {
    return std::make_shared<IntExpr>(IntExpr{IntBin{op, std::move(l), std::move(r)}, loc});
}
BoolExprPtr mk_bool_lit(bool v, SourceLoc loc) {
    return std::make_shared<BoolExpr>(BoolExpr{BoolLit{v}, loc});
}
BoolExprPtr mk_cmp(CmpOp op, IntExprPtr l, IntExprPtr r, SourceLoc loc) {
    return std::make_shared<BoolExpr>(BoolExpr{Cmp{op, std::move(l), std::move(r)}, loc});
}
BoolExprPtr mk_not(BoolExprPtr e, SourceLoc loc) {
    return std::make_shared<BoolExpr>(BoolExpr{Not{std::move(e)}, loc});
}
BoolExprPtr mk_or(BoolExprPtr l, BoolExprPtr r, SourceLoc loc) {
    return std::make_shared<BoolExpr>(BoolExpr{Or{std::move(l), std::move(r)}, loc});
}

bool expr_eq(const IntExprPtr& a, const IntExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    if (const IntLit* l = std::get_if<IntLit>(&a->node)) {
        return l->value == std::get<IntLit>(b->node).value;
    }
    if (const VarRef* v = std::get_if<VarRef>(&a->node)) {
        return v->name == std::get<VarRef>(b->node).name;
    }
    const IntBin& x = std::get<IntBin>(a->node);
    const IntBin& y = std::get<IntBin>(b->node);
    return x.op == y.op && expr_eq(x.lhs, y.lhs) && expr_eq(x.rhs, y.rhs);
}

bool expr_eq(const BoolExprPtr& a, const BoolExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    if (const BoolLit* l = std::get_if<BoolLit>(&a->node)) {
        return l->value == std::get<BoolLit>(b->node).value;
    }
    if (const Cmp* c = std::get_if<Cmp>(&a->node)) {
        const Cmp& d = std::get<Cmp>(b->node);
        return c->op == d.op && expr_eq(c->lhs, d.lhs) && expr_eq(c->rhs, d.rhs);
    }
    if (const Not* n = std::get_if<Not>(&a->node)) {
        return expr_eq(n->arg, std::get<Not>(b->node).arg);
    }
    const Or& x = std::get<Or>(a->node);
    const Or& y = std::get<Or>(b->node);
    return expr_eq(x.lhs, y.lhs) && expr_eq(x.rhs, y.rhs);
}

bool stmt_eq(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const LocalDecl* d = std::get_if<LocalDecl>(&a.node)) {
        const LocalDecl& e = std::get<LocalDecl>(b.node);
        return d->name == e.name && d->init == e.init;
    }
    if (const Assign* d = std::get_if<Assign>(&a.node)) {
        const Assign& e = std::get<Assign>(b.node);
        return d->name == e.name && expr_eq(d->value, e.value);
    }
    if (const CallAssign* d = std::get_if<CallAssign>(&a.node)) {
        const CallAssign& e = std::get<CallAssign>(b.node);
        if (d->name != e.name || d->callee != e.callee || d->args.size() != e.args.size()) {
            return false;
        }
        for (size_t i = 0; i < d->args.size(); ++i) {
            if (!expr_eq(d->args[i], e.args[i])) return false;
        }
        return true;
    }
    if (const If* d = std::get_if<If>(&a.node)) {
        const If& e = std::get<If>(b.node);
        return expr_eq(d->cond, e.cond) && seq_eq(d->then_body, e.then_body) &&
               seq_eq(d->else_body, e.else_body);
    }
    const While& d = std::get<While>(a.node);
    const While& e = std::get<While>(b.node);
    return expr_eq(d.cond, e.cond) && seq_eq(d.body, e.body);
}

bool seq_eq(const StmtSeq& a, const StmtSeq& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!stmt_eq(a[i], b[i])) return false;
    }
    return true;
}

bool program_eq(const Program& a, const Program& b) {
    if (a.globals.size() != b.globals.size() || a.functions.size() != b.functions.size()) {
        return false;
    }
    for (size_t i = 0; i < a.globals.size(); ++i) {
        if (a.globals[i].name != b.globals[i].name || a.globals[i].init != b.globals[i].init) {
            return false;
        }
    }
    for (size_t i = 0; i < a.functions.size(); ++i) {
        const FunDef& f = a.functions[i];
        const FunDef& g = b.functions[i];
        if (f.name != g.name || f.params != g.params || !seq_eq(f.body, g.body) ||
            !expr_eq(f.return_expr, g.return_expr)) {
            return false;
        }
    }
    return true;
}

namespace {
void collect(const IntExprPtr& e, std::vector<std::string>& out) {
    if (const VarRef* v = std::get_if<VarRef>(&e->node)) {
        if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
        return;
    }
    if (const IntBin* b = std::get_if<IntBin>(&e->node)) {
        collect(b->lhs, out);
        collect(b->rhs, out);
    }
}
} // namespace

std::vector<std::string> vars_read(const IntExprPtr& e) {
    std::vector<std::string> out;
    collect(e, out);
    return out;
}

void collect_vars_read(const BoolExprPtr& e, std::vector<std::string>& out) {
    if (const Cmp* c = std::get_if<Cmp>(&e->node)) {
        collect(c->lhs, out);
        collect(c->rhs, out);
        return;
    }
    if (const Not* n = std::get_if<Not>(&e->node)) {
        collect_vars_read(n->arg, out);
        return;
    }
    if (const Or* o = std::get_if<Or>(&e->node)) {
        collect_vars_read(o->lhs, out);
        collect_vars_read(o->rhs, out);
    }
}

} // namespace s2l::syntax

#include "s2l/pretty.hpp"

namespace s2l::syntax {

namespace {

// tighter binds higher: ! 50 | * 40 | + - 30 | == < 20 | "||" 10
void print_int(const IntExprPtr& e, int parent_prec, std::string& out);

void print_bool(const BoolExprPtr& e, int parent_prec, std::string& out) {
    if (const BoolLit* l = std::get_if<BoolLit>(&e->node)) {
        out += l->value ? "true" : "false";
        return;
    }
    if (const Cmp* c = std::get_if<Cmp>(&e->node)) {
        bool parens = 20 < parent_prec;
        if (parens) out += '(';
        print_int(c->lhs, 21, out);
        out += c->op == CmpOp::Eq ? " == " : " < ";
        print_int(c->rhs, 21, out);
        if (parens) out += ')';
        return;
    }
    if (const Not* n = std::get_if<Not>(&e->node)) {
        out += '!';
        // The operand of ! is parenthesized unless it is atomic or another !.
        print_bool(n->arg, 50, out);
        return;
    }
    const Or& o = std::get<Or>(e->node);
    bool parens = 10 < parent_prec;
    if (parens) out += '(';
    print_bool(o.lhs, 10, out);
    out += " || ";
    print_bool(o.rhs, 11, out);
    if (parens) out += ')';
}

void print_int(const IntExprPtr& e, int parent_prec, std::string& out) {
    if (const IntLit* l = std::get_if<IntLit>(&e->node)) {
        out += std::to_string(l->value);
        return;
    }
    if (const VarRef* v = std::get_if<VarRef>(&e->node)) {
        out += v->name;
        return;
    }
    const IntBin& b = std::get<IntBin>(e->node);
    int prec = b.op == IntOp::Mul ? 40 : 30;
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    print_int(b.lhs, prec, out);
    out += b.op == IntOp::Add ? " + " : b.op == IntOp::Sub ? " - " : " * ";
    print_int(b.rhs, prec + 1, out);
    if (parens) out += ')';
}

void indent(int depth, std::string& out) { out.append((size_t)depth * 2, ' '); }

void print_seq(const StmtSeq& seq, int depth, std::string& out);

void print_stmt(const Stmt& s, int depth, std::string& out) {
    indent(depth, out);
    if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node)) {
        out += "int " + d->name + " = " + std::to_string(d->init) + ";\n";
        return;
    }
    if (const Assign* a = std::get_if<Assign>(&s.node)) {
        out += a->name + " = ";
        print_int(a->value, 0, out);
        out += ";\n";
        return;
    }
    if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
        out += c->name + " = " + c->callee + "(";
        for (size_t i = 0; i < c->args.size(); ++i) {
            if (i) out += ", ";
            print_int(c->args[i], 0, out);
        }
        out += ");\n";
        return;
    }
    if (const If* f = std::get_if<If>(&s.node)) {
        out += "if (";
        print_bool(f->cond, 0, out);
        out += ") {\n";
        print_seq(f->then_body, depth + 1, out);
        indent(depth, out);
        out += "} else {\n";
        print_seq(f->else_body, depth + 1, out);
        indent(depth, out);
        out += "}\n";
        return;
    }
    const While& w = std::get<While>(s.node);
    out += "while (";
    print_bool(w.cond, 0, out);
    out += ") {\n";
    print_seq(w.body, depth + 1, out);
    indent(depth, out);
    out += "}\n";
}

void print_seq(const StmtSeq& seq, int depth, std::string& out) {
    for (const Stmt& s : seq) print_stmt(s, depth, out);
}

} // namespace

std::string pretty(const IntExprPtr& e) {
    std::string out;
    print_int(e, 0, out);
    return out;
}

std::string pretty(const BoolExprPtr& e) {
    std::string out;
    print_bool(e, 0, out);
    return out;
}

std::string pretty(const Program& p) {
    std::string out;
    for (const Global& g : p.globals) {
        out += "int " + g.name + " = " + std::to_string(g.init) + ";\n";
    }
    if (!p.globals.empty()) out += '\n';
    for (size_t i = 0; i < p.functions.size(); ++i) {
        if (i) out += '\n';
        const FunDef& f = p.functions[i];
        out += "int " + f.name + "(";
        for (size_t j = 0; j < f.params.size(); ++j) {
            if (j) out += ", ";
            out += "int " + f.params[j];
        }
        out += ") {\n";
        print_seq(f.body, 1, out);
        indent(1, out);
        out += "return ";
        print_int(f.return_expr, 0, out);
        out += ";\n}\n";
    }
    return out;
}

} // namespace s2l::syntax

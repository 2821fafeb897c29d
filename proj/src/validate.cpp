#include "s2l/validate.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

namespace s2l::syntax {

namespace {

bool reserved_name(const std::string& name) {
    if (name == "env" || name == "stack" || name == "bot") return true;
    if (name.size() >= 2 && name[0] == 'u') {
        bool digits = true;
        for (size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit((unsigned char)name[i])) digits = false;
        }
        if (digits) return true;
    }
    return false;
}

class Checker {
public:
    explicit Checker(const Program& p) : p_(p) {}

    std::vector<Diagnostic> run() {
        check_globals();
        check_function_table();
        for (const FunDef& f : p_.functions) check_function(f);
        check_main();
        return std::move(out_);
    }

private:
    void report(const std::string& msg, SourceLoc loc) { out_.push_back({msg, loc}); }

    void check_var_name(const std::string& name, SourceLoc loc, const char* what) {
        if (reserved_name(name) || name == "main") {
            report(std::string(what) + " name " + name + " is reserved for the translation",
                   loc);
        }
        if (p_.find_function(name)) {
            report(std::string(what) + " " + name + " reuses a function name", loc);
        }
    }

    void check_globals() {
        std::set<std::string> seen;
        for (const Global& g : p_.globals) {
            if (!seen.insert(g.name).second) {
                report("duplicate global " + g.name, g.loc);
            }
            check_var_name(g.name, g.loc, "global");
        }
    }

    void check_function_table() {
        std::set<std::string> seen;
        for (const FunDef& f : p_.functions) {
            if (!seen.insert(f.name).second) {
                report("duplicate function " + f.name, f.loc);
            }
            if (reserved_name(f.name)) {
                report("function name " + f.name + " is reserved for the translation", f.loc);
            }
        }
    }

    void check_main() {
        const FunDef* m = p_.find_function("main");
        if (!m) {
            report("no function main", {});
            return;
        }
        if (!m->params.empty()) {
            report("main takes no parameters", m->loc);
        }
    }

    void check_function(const FunDef& f) {
        std::vector<std::string> scope; // globals, then params, then live locals
        for (const Global& g : p_.globals) scope.push_back(g.name);
        std::set<std::string> params;
        for (const std::string& param : f.params) {
            if (!params.insert(param).second) {
                report("duplicate parameter " + param + " of " + f.name, f.loc);
            }
            if (p_.is_global(param)) {
                report("parameter " + param + " of " + f.name + " shadows a global", f.loc);
            }
            check_var_name(param, f.loc, "parameter");
            scope.push_back(param);
        }
        check_seq(f.body, scope);
        check_int_expr(f.return_expr, scope);
    }

    bool in_scope(const std::vector<std::string>& scope, const std::string& name) {
        return std::find(scope.begin(), scope.end(), name) != scope.end();
    }

    // Extends `scope` with the locals declared at this level; callers pass a
    // copy when entering a branch so the additions die at the join.
    void check_seq(const StmtSeq& seq, std::vector<std::string>& scope) {
        for (const Stmt& s : seq) check_stmt(s, scope);
    }

    void check_stmt(const Stmt& s, std::vector<std::string>& scope) {
        if (const LocalDecl* d = std::get_if<LocalDecl>(&s.node)) {
            if (in_scope(scope, d->name)) {
                report("declaration of " + d->name + " shadows a variable in scope", s.loc);
            }
            check_var_name(d->name, s.loc, "local");
            scope.push_back(d->name);
            return;
        }
        if (const Assign* a = std::get_if<Assign>(&s.node)) {
            if (!in_scope(scope, a->name)) {
                report("assignment to undeclared variable " + a->name, s.loc);
            }
            check_int_expr(a->value, scope);
            return;
        }
        if (const CallAssign* c = std::get_if<CallAssign>(&s.node)) {
            if (!in_scope(scope, c->name)) {
                report("assignment to undeclared variable " + c->name, s.loc);
            }
            const FunDef* callee = p_.find_function(c->callee);
            if (!callee) {
                report("call to undefined function " + c->callee, s.loc);
            } else if (callee->params.size() != c->args.size()) {
                report("call to " + c->callee + " with " + std::to_string(c->args.size()) +
                           " arguments; it takes " + std::to_string(callee->params.size()),
                       s.loc);
            }
            for (const IntExprPtr& arg : c->args) check_int_expr(arg, scope);
            return;
        }
        if (const If* f = std::get_if<If>(&s.node)) {
            check_bool_expr(f->cond, scope);
            std::vector<std::string> then_scope = scope;
            check_seq(f->then_body, then_scope);
            std::vector<std::string> else_scope = scope;
            check_seq(f->else_body, else_scope);
            return;
        }
        const While& w = std::get<While>(s.node);
        check_bool_expr(w.cond, scope);
        std::vector<std::string> body_scope = scope;
        check_seq(w.body, body_scope);
    }

    void check_int_expr(const IntExprPtr& e, const std::vector<std::string>& scope) {
        for (const std::string& name : vars_read(e)) {
            if (!in_scope(scope, name)) {
                report("read of undeclared variable " + name, e->loc);
            }
        }
    }

    void check_bool_expr(const BoolExprPtr& e, const std::vector<std::string>& scope) {
        std::vector<std::string> names;
        collect_vars_read(e, names);
        for (const std::string& name : names) {
            if (!in_scope(scope, name)) {
                report("read of undeclared variable " + name, e->loc);
            }
        }
    }

    const Program& p_;
    std::vector<Diagnostic> out_;
};

} // namespace

std::vector<Diagnostic> validate(const Program& p) { return Checker(p).run(); }

} // namespace s2l::syntax

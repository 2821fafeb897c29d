#include "s2l/format.hpp"

#include "s2l/diag.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>

namespace s2l::lctrs {

// ---------------------------------------------------------------- printing

namespace {

// Precedence levels, tighter binds higher. Atoms and calls are 100.
int op_prec(TheoryOp op) {
    switch (op) {
    case TheoryOp::Not: return 60;
    case TheoryOp::Mul:
    case TheoryOp::Div:
    case TheoryOp::Mod: return 50;
    case TheoryOp::Add:
    case TheoryOp::Sub: return 40;
    case TheoryOp::Eq:
    case TheoryOp::Ne:
    case TheoryOp::Lt:
    case TheoryOp::Le:
    case TheoryOp::Gt:
    case TheoryOp::Ge: return 30;
    case TheoryOp::And: return 20;
    case TheoryOp::Or: return 10;
    case TheoryOp::Imp: return 5;
    case TheoryOp::Exp: return 100; // printed as a call
    }
    return 100;
}

void print_term(const TermPtr& t, int parent_prec, std::string& out) {
    if (const Var* v = t->as_var()) {
        out += v->name;
        return;
    }
    if (const IntVal* n = t->as_int()) {
        out += std::to_string(n->value);
        return;
    }
    if (const BoolVal* b = t->as_bool()) {
        out += b->value ? "true" : "false";
        return;
    }
    if (const App* a = t->as_app()) {
        out += a->symbol;
        if (!a->args.empty()) {
            out += '(';
            for (size_t i = 0; i < a->args.size(); ++i) {
                if (i) out += ", ";
                print_term(a->args[i], 0, out);
            }
            out += ')';
        }
        return;
    }
    const Calc* c = t->as_calc();
    if (c->op == TheoryOp::Exp) {
        out += "exp(";
        print_term(c->args[0], 0, out);
        out += ", ";
        print_term(c->args[1], 0, out);
        out += ')';
        return;
    }
    int prec = op_prec(c->op);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    if (c->op == TheoryOp::Not) {
        out += "not ";
        // `not` chains print bare; anything looser needs parentheses.
        print_term(c->args[0], prec, out);
    } else if (c->op == TheoryOp::Imp) {
        // right-associative
        print_term(c->args[0], prec + 1, out);
        out += " => ";
        print_term(c->args[1], prec, out);
    } else {
        // Left-associative: the left child may print at the same level, the
        // right child must bind strictly tighter.
        print_term(c->args[0], prec, out);
        out += ' ';
        out += op_name(c->op);
        out += ' ';
        print_term(c->args[1], prec + 1, out);
    }
    if (parens) out += ')';
}

} // namespace

std::string term_to_string(const TermPtr& t) {
    std::string out;
    print_term(t, 0, out);
    return out;
}

std::string emit(const Lctrs& sys) {
    Lctrs copy = sys;
    copy.normalize();
    std::string out;
    out += "sorts";
    for (const Sort& s : copy.sorts) {
        out += ' ';
        out += s.name;
    }
    out += '\n';
    for (const SymbolDecl& d : copy.symbols) {
        out += "symbol ";
        out += d.name;
        out += " : ";
        for (size_t i = 0; i < d.args.size(); ++i) {
            if (i) out += " * ";
            out += d.args[i].name;
        }
        if (!d.args.empty()) out += " => ";
        out += d.result.name;
        out += " [terms]\n";
    }
    for (const ConstrainedRule& r : copy.rules) {
        out += "rule ";
        print_term(r.lhs, 0, out);
        out += " -> ";
        print_term(r.rhs, 0, out);
        if (!r.is_unconstrained()) {
            out += " [";
            print_term(r.constraint, 0, out);
            out += ']';
        }
        out += '\n';
    }
    return out;
}

// ----------------------------------------------------------------- lexing

namespace {

enum class Tok {
    Ident,   // also keywords; text in `text`
    Int,     // digits in `text`
    Op,      // one of + - * / symbols below, text in `text`
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Arrow,   // ->
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceLoc loc;
};

class Lexer {
public:
    Lexer(const std::string& src, int first_line) : src_(src), line_(first_line) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            Token t = next();
            bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char get() {
        char c = peek();
        ++pos_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    SourceLoc here() const { return {line_, col_}; }

    Token next() {
        while (true) {
            char c = peek();
            if (c == '#') {
                while (peek() && peek() != '\n') get();
                continue;
            }
            if (std::isspace((unsigned char)c)) {
                get();
                continue;
            }
            break;
        }
        SourceLoc loc = here();
        char c = peek();
        if (!c) return {Tok::End, "", loc};
        if (std::isdigit((unsigned char)c)) {
            std::string text;
            while (std::isdigit((unsigned char)peek())) text += get();
            return {Tok::Int, text, loc};
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string text;
            while (std::isalnum((unsigned char)peek()) || peek() == '_') text += get();
            return {Tok::Ident, text, loc};
        }
        switch (c) {
        case '(': get(); return {Tok::LParen, "(", loc};
        case ')': get(); return {Tok::RParen, ")", loc};
        case '[': get(); return {Tok::LBracket, "[", loc};
        case ']': get(); return {Tok::RBracket, "]", loc};
        case ',': get(); return {Tok::Comma, ",", loc};
        case ':': get(); return {Tok::Colon, ":", loc};
        case '+': get(); return {Tok::Op, "+", loc};
        case '*': get(); return {Tok::Op, "*", loc};
        case '-':
            get();
            if (peek() == '>') {
                get();
                return {Tok::Arrow, "->", loc};
            }
            return {Tok::Op, "-", loc};
        case '=':
            get();
            if (peek() == '>') {
                get();
                return {Tok::Op, "=>", loc};
            }
            return {Tok::Op, "=", loc};
        case '!':
            get();
            if (peek() == '=') {
                get();
                return {Tok::Op, "!=", loc};
            }
            throw ParseError("stray '!'", loc);
        case '<':
            get();
            if (peek() == '=') {
                get();
                return {Tok::Op, "<=", loc};
            }
            return {Tok::Op, "<", loc};
        case '>':
            get();
            if (peek() == '=') {
                get();
                return {Tok::Op, ">=", loc};
            }
            return {Tok::Op, ">", loc};
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", loc);
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_;
    int col_ = 1;
};

std::int64_t parse_int_literal(const std::string& digits, bool negative, SourceLoc loc) {
    const std::uint64_t limit =
        negative ? (std::uint64_t)std::numeric_limits<std::int64_t>::max() + 1
                 : (std::uint64_t)std::numeric_limits<std::int64_t>::max();
    std::uint64_t acc = 0;
    for (char c : digits) {
        if (acc > (limit - (std::uint64_t)(c - '0')) / 10) {
            throw ParseError("integer literal out of range", loc);
        }
        acc = acc * 10 + (std::uint64_t)(c - '0');
    }
    return negative ? (std::int64_t)(0 - acc) : (std::int64_t)acc;
}

// ------------------------------------------------------------ raw parsing
//
// Terms are first parsed into a raw tree (identifiers unresolved), then
// annotated against the signature to resolve symbols vs. variables and to
// infer variable sorts.

struct RawTerm;
using RawPtr = std::unique_ptr<RawTerm>;

struct RawTerm {
    enum Kind { Int, Bool, Ident, CalcNode } kind;
    SourceLoc loc;
    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string name;       // Ident
    bool has_parens = false; // Ident: written with an argument list
    TheoryOp op = TheoryOp::Add;
    std::vector<RawPtr> args;
};

class TermParser {
public:
    TermParser(const std::vector<Token>& toks, size_t& at) : toks_(toks), at_(at) {}

    RawPtr parse() { return parse_imp(); }

private:
    const Token& cur() const { return toks_[at_]; }
    const Token& take() { return toks_[at_++]; }
    bool at_op(const char* name) const {
        return cur().kind == Tok::Op && cur().text == name;
    }
    bool at_word(const char* name) const {
        return cur().kind == Tok::Ident && cur().text == name;
    }

    RawPtr mk_calc_raw(TheoryOp op, SourceLoc loc, RawPtr a, RawPtr b = nullptr) {
        auto r = std::make_unique<RawTerm>();
        r->kind = RawTerm::CalcNode;
        r->loc = loc;
        r->op = op;
        r->args.push_back(std::move(a));
        if (b) r->args.push_back(std::move(b));
        return r;
    }

    RawPtr parse_imp() { // right-associative
        RawPtr lhs = parse_or();
        if (at_op("=>")) {
            SourceLoc loc = take().loc;
            RawPtr rhs = parse_imp();
            return mk_calc_raw(TheoryOp::Imp, loc, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    RawPtr parse_or() {
        RawPtr lhs = parse_and();
        while (at_word("or")) {
            SourceLoc loc = take().loc;
            lhs = mk_calc_raw(TheoryOp::Or, loc, std::move(lhs), parse_and());
        }
        return lhs;
    }

    RawPtr parse_and() {
        RawPtr lhs = parse_cmp();
        while (at_word("and")) {
            SourceLoc loc = take().loc;
            lhs = mk_calc_raw(TheoryOp::And, loc, std::move(lhs), parse_cmp());
        }
        return lhs;
    }

    RawPtr parse_cmp() {
        RawPtr lhs = parse_add();
        static const char* cmps[] = {"=", "!=", "<", "<=", ">", ">="};
        for (const char* c : cmps) {
            if (at_op(c)) {
                SourceLoc loc = take().loc;
                TheoryOp op = *op_from_name(c);
                return mk_calc_raw(op, loc, std::move(lhs), parse_add());
            }
        }
        return lhs;
    }

    RawPtr parse_add() {
        RawPtr lhs = parse_mul();
        while (at_op("+") || at_op("-")) {
            TheoryOp op = cur().text == "+" ? TheoryOp::Add : TheoryOp::Sub;
            SourceLoc loc = take().loc;
            lhs = mk_calc_raw(op, loc, std::move(lhs), parse_mul());
        }
        return lhs;
    }

    RawPtr parse_mul() {
        RawPtr lhs = parse_unary();
        while (at_op("*") || at_word("div") || at_word("mod")) {
            TheoryOp op = cur().kind == Tok::Op ? TheoryOp::Mul
                          : cur().text == "div" ? TheoryOp::Div
                                                : TheoryOp::Mod;
            SourceLoc loc = take().loc;
            lhs = mk_calc_raw(op, loc, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    RawPtr parse_unary() {
        if (at_word("not")) {
            SourceLoc loc = take().loc;
            return mk_calc_raw(TheoryOp::Not, loc, parse_unary());
        }
        return parse_primary();
    }

    RawPtr parse_primary() {
        const Token& t = cur();
        auto r = std::make_unique<RawTerm>();
        r->loc = t.loc;
        if (t.kind == Tok::Int) {
            take();
            r->kind = RawTerm::Int;
            r->int_value = parse_int_literal(t.text, false, t.loc);
            return r;
        }
        if (t.kind == Tok::Op && t.text == "-") {
            take();
            if (cur().kind != Tok::Int) {
                throw ParseError("expected an integer literal after '-'", cur().loc);
            }
            const Token& digits = take();
            r->kind = RawTerm::Int;
            r->int_value = parse_int_literal(digits.text, true, digits.loc);
            return r;
        }
        if (t.kind == Tok::LParen) {
            take();
            RawPtr inner = parse_imp();
            expect_rparen();
            return inner;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "true" || t.text == "false") {
                take();
                r->kind = RawTerm::Bool;
                r->bool_value = t.text == "true";
                return r;
            }
            take();
            if (t.text == "exp" && cur().kind == Tok::LParen) {
                take();
                RawPtr a = parse_imp();
                expect_comma();
                RawPtr b = parse_imp();
                expect_rparen();
                return mk_calc_raw(TheoryOp::Exp, t.loc, std::move(a), std::move(b));
            }
            r->kind = RawTerm::Ident;
            r->name = t.text;
            if (cur().kind == Tok::LParen) {
                take();
                r->has_parens = true;
                if (cur().kind != Tok::RParen) {
                    r->args.push_back(parse_imp());
                    while (cur().kind == Tok::Comma) {
                        take();
                        r->args.push_back(parse_imp());
                    }
                }
                expect_rparen();
            }
            return r;
        }
        throw ParseError("expected a term, found '" + t.text + "'", t.loc);
    }

    void expect_rparen() {
        if (cur().kind != Tok::RParen) throw ParseError("expected ')'", cur().loc);
        take();
    }
    void expect_comma() {
        if (cur().kind != Tok::Comma) throw ParseError("expected ','", cur().loc);
        take();
    }

    const std::vector<Token>& toks_;
    size_t& at_;
};

// ------------------------------------------------------------- annotation

// Raised internally when a bare variable is met with no expected sort; the
// equality handler catches it to try the other operand first.
struct NeedSort {
    SourceLoc loc;
    std::string name;
};

class Annotator {
public:
    Annotator(const Lctrs& sys, std::map<std::string, Sort>& var_sorts)
        : sys_(sys), var_sorts_(var_sorts) {}

    TermPtr run(const RawTerm& raw, std::optional<Sort> expected) {
        switch (raw.kind) {
        case RawTerm::Int:
            require(expected, sort_int, raw.loc);
            return mk_int(raw.int_value);
        case RawTerm::Bool:
            require(expected, sort_bool, raw.loc);
            return mk_bool(raw.bool_value);
        case RawTerm::Ident:
            return annotate_ident(raw, expected);
        case RawTerm::CalcNode:
            return annotate_calc(raw, expected);
        }
        throw Error("unreachable");
    }

private:
    void require(const std::optional<Sort>& expected, const Sort& actual, SourceLoc loc) {
        if (expected && !(*expected == actual)) {
            throw ParseError("expected a term of sort " + expected->name + ", found " +
                                 actual.name,
                             loc);
        }
    }

    TermPtr annotate_ident(const RawTerm& raw, std::optional<Sort> expected) {
        if (const SymbolDecl* d = sys_.find_symbol(raw.name)) {
            if (raw.args.size() != d->args.size()) {
                throw ParseError("symbol " + raw.name + " takes " +
                                     std::to_string(d->args.size()) + " arguments, got " +
                                     std::to_string(raw.args.size()),
                                 raw.loc);
            }
            require(expected, d->result, raw.loc);
            std::vector<TermPtr> args;
            for (size_t i = 0; i < raw.args.size(); ++i) {
                args.push_back(run(*raw.args[i], d->args[i]));
            }
            return mk_app(d->name, d->result, std::move(args));
        }
        if (raw.has_parens) {
            throw ParseError("undeclared symbol " + raw.name, raw.loc);
        }
        auto it = var_sorts_.find(raw.name);
        if (it != var_sorts_.end()) {
            require(expected, it->second, raw.loc);
            return mk_var(raw.name, it->second);
        }
        if (!expected) throw NeedSort{raw.loc, raw.name};
        var_sorts_.emplace(raw.name, *expected);
        return mk_var(raw.name, *expected);
    }

    TermPtr annotate_calc(const RawTerm& raw, std::optional<Sort> expected) {
        TheoryOp op = raw.op;
        require(expected, op_result_sort(op), raw.loc);
        if (op == TheoryOp::Eq || op == TheoryOp::Ne) {
            TermPtr a, b;
            try {
                a = run(*raw.args[0], std::nullopt);
                b = run(*raw.args[1], a->sort());
            } catch (const NeedSort&) {
                try {
                    b = run(*raw.args[1], std::nullopt);
                    a = run(*raw.args[0], b->sort());
                } catch (const NeedSort&) {
                    // Both sides are fresh bare variables: default to int.
                    a = run(*raw.args[0], sort_int);
                    b = run(*raw.args[1], sort_int);
                }
            }
            if (!is_theory_sort(a->sort())) {
                throw ParseError("equality needs int or bool operands, found " + a->sort().name,
                                 raw.loc);
            }
            return mk_calc(op, {a, b});
        }
        std::vector<TermPtr> args;
        for (const auto& arg : raw.args) {
            args.push_back(run(*arg, op_arg_sort(op)));
        }
        return mk_calc(op, std::move(args));
    }

    const Lctrs& sys_;
    std::map<std::string, Sort>& var_sorts_;
};

TermPtr annotate_or_fail(const Lctrs& sys, const RawTerm& raw, std::optional<Sort> expected,
                         std::map<std::string, Sort>& var_sorts) {
    try {
        return Annotator(sys, var_sorts).run(raw, expected);
    } catch (const NeedSort& n) {
        throw ParseError("cannot infer the sort of variable " + n.name, n.loc);
    }
}

// ------------------------------------------------------------ file parser

class FileParser {
public:
    explicit FileParser(const std::string& text) : text_(text) {}

    Lctrs run() {
        std::istringstream in(text_);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            parse_line(line, line_no);
        }
        sys_.normalize();
        auto problems = sys_.validate();
        if (!problems.empty()) {
            throw Error("invalid system:\n" + diagnostics_to_string(problems));
        }
        return sys_;
    }

private:
    void parse_line(const std::string& line, int line_no) {
        std::vector<Token> toks = Lexer(line, line_no).run();
        size_t at = 0;
        if (toks[at].kind == Tok::End) return; // blank or comment-only
        if (toks[at].kind != Tok::Ident) {
            throw ParseError("expected 'sorts', 'symbol' or 'rule'", toks[at].loc);
        }
        const std::string& head = toks[at].text;
        if (head == "sorts") {
            ++at;
            parse_sorts(toks, at);
        } else if (head == "symbol") {
            ++at;
            parse_symbol(toks, at);
        } else if (head == "rule") {
            ++at;
            parse_rule(toks, at);
        } else {
            throw ParseError("expected 'sorts', 'symbol' or 'rule', found '" + head + "'",
                             toks[at].loc);
        }
    }

    void parse_sorts(const std::vector<Token>& toks, size_t& at) {
        if (toks[at].kind == Tok::End) throw ParseError("empty sorts line", toks[at].loc);
        while (toks[at].kind != Tok::End) {
            if (toks[at].kind != Tok::Ident) {
                throw ParseError("expected a sort name", toks[at].loc);
            }
            sys_.add_sort(Sort{toks[at].text});
            ++at;
        }
    }

    Sort expect_sort(const std::vector<Token>& toks, size_t& at) {
        if (toks[at].kind != Tok::Ident) throw ParseError("expected a sort name", toks[at].loc);
        Sort s{toks[at].text};
        if (std::find(sys_.sorts.begin(), sys_.sorts.end(), s) == sys_.sorts.end()) {
            throw ParseError("undeclared sort " + s.name, toks[at].loc);
        }
        ++at;
        return s;
    }

    void parse_symbol(const std::vector<Token>& toks, size_t& at) {
        if (toks[at].kind != Tok::Ident) throw ParseError("expected a symbol name", toks[at].loc);
        SymbolDecl d;
        d.name = toks[at].text;
        SourceLoc name_loc = toks[at].loc;
        ++at;
        if (toks[at].kind != Tok::Colon) throw ParseError("expected ':'", toks[at].loc);
        ++at;
        std::vector<Sort> sig;
        sig.push_back(expect_sort(toks, at));
        while (toks[at].kind == Tok::Op && toks[at].text == "*") {
            ++at;
            sig.push_back(expect_sort(toks, at));
        }
        if (toks[at].kind == Tok::Op && toks[at].text == "=>") {
            ++at;
            d.args = std::move(sig);
            d.result = expect_sort(toks, at);
        } else {
            if (sig.size() != 1) {
                throw ParseError("expected '=>' after the argument sorts", toks[at].loc);
            }
            d.result = sig[0];
        }
        // Optional kind annotation; only [terms] exists (values and theory
        // symbols are built in and never declared).
        if (toks[at].kind == Tok::LBracket) {
            ++at;
            if (toks[at].kind != Tok::Ident || toks[at].text != "terms") {
                throw ParseError("expected kind 'terms'", toks[at].loc);
            }
            ++at;
            if (toks[at].kind != Tok::RBracket) throw ParseError("expected ']'", toks[at].loc);
            ++at;
        }
        expect_end(toks, at);
        if (op_from_name(d.name) || d.name == "true" || d.name == "false") {
            throw ParseError("symbol name " + d.name + " clashes with a theory symbol", name_loc);
        }
        try {
            sys_.add_symbol(d);
        } catch (const Error& e) {
            throw ParseError(e.what(), name_loc);
        }
    }

    void parse_rule(const std::vector<Token>& toks, size_t& at) {
        RawPtr raw_lhs = TermParser(toks, at).parse();
        if (toks[at].kind != Tok::Arrow) throw ParseError("expected '->'", toks[at].loc);
        SourceLoc arrow_loc = toks[at].loc;
        ++at;
        RawPtr raw_rhs = TermParser(toks, at).parse();
        RawPtr raw_constraint;
        if (toks[at].kind == Tok::LBracket) {
            ++at;
            raw_constraint = TermParser(toks, at).parse();
            if (toks[at].kind != Tok::RBracket) throw ParseError("expected ']'", toks[at].loc);
            ++at;
        }
        expect_end(toks, at);

        std::map<std::string, Sort> var_sorts;
        ConstrainedRule rule;
        rule.lhs = annotate_or_fail(sys_, *raw_lhs, std::nullopt, var_sorts);
        rule.rhs = annotate_or_fail(sys_, *raw_rhs, rule.lhs->sort(), var_sorts);
        rule.constraint = raw_constraint
                              ? annotate_or_fail(sys_, *raw_constraint, sort_bool, var_sorts)
                              : mk_bool(true);
        if (!rule.lhs->as_app()) {
            throw ParseError("rule left-hand side must start with a term symbol", arrow_loc);
        }
        sys_.rules.push_back(std::move(rule));
    }

    void expect_end(const std::vector<Token>& toks, size_t& at) {
        if (toks[at].kind != Tok::End) {
            throw ParseError("unexpected trailing input '" + toks[at].text + "'", toks[at].loc);
        }
    }

    const std::string& text_;
    Lctrs sys_;
};

} // namespace

Lctrs parse_lctrs(const std::string& text) { return FileParser(text).run(); }

TermPtr parse_term_in(const std::string& text, const Lctrs& sys) {
    std::vector<Token> toks = Lexer(text, 1).run();
    size_t at = 0;
    RawPtr raw = TermParser(toks, at).parse();
    if (toks[at].kind != Tok::End) {
        throw ParseError("unexpected trailing input '" + toks[at].text + "'", toks[at].loc);
    }
    std::map<std::string, Sort> var_sorts;
    return annotate_or_fail(sys, *raw, std::nullopt, var_sorts);
}

} // namespace s2l::lctrs

#include "s2l/parse.hpp"

#include <cctype>
#include <limits>
#include <memory>
#include <optional>

namespace s2l::syntax {

namespace {

enum class Tok {
    Ident,
    Int,
    KwInt,
    KwIf,
    KwElse,
    KwWhile,
    KwFor,
    KwReturn,
    KwTrue,
    KwFalse,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Assign, // =
    Op,     // == != < <= > >= + - * ! && || =>
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceLoc loc;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            Token t = next();
            bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) return out;
        }
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
            if (c == '/' && peek(1) == '/') {
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
            if (text == "int") return {Tok::KwInt, text, loc};
            if (text == "if") return {Tok::KwIf, text, loc};
            if (text == "else") return {Tok::KwElse, text, loc};
            if (text == "while") return {Tok::KwWhile, text, loc};
            if (text == "for") return {Tok::KwFor, text, loc};
            if (text == "return") return {Tok::KwReturn, text, loc};
            if (text == "true") return {Tok::KwTrue, text, loc};
            if (text == "false") return {Tok::KwFalse, text, loc};
            return {Tok::Ident, text, loc};
        }
        switch (c) {
        case '(': get(); return {Tok::LParen, "(", loc};
        case ')': get(); return {Tok::RParen, ")", loc};
        case '{': get(); return {Tok::LBrace, "{", loc};
        case '}': get(); return {Tok::RBrace, "}", loc};
        case ',': get(); return {Tok::Comma, ",", loc};
        case ';': get(); return {Tok::Semi, ";", loc};
        case '+': get(); return {Tok::Op, "+", loc};
        case '-': get(); return {Tok::Op, "-", loc};
        case '*': get(); return {Tok::Op, "*", loc};
        case '=':
            get();
            if (peek() == '=') { get(); return {Tok::Op, "==", loc}; }
            if (peek() == '>') { get(); return {Tok::Op, "=>", loc}; }
            return {Tok::Assign, "=", loc};
        case '!':
            get();
            if (peek() == '=') { get(); return {Tok::Op, "!=", loc}; }
            return {Tok::Op, "!", loc};
        case '<':
            get();
            if (peek() == '=') { get(); return {Tok::Op, "<=", loc}; }
            return {Tok::Op, "<", loc};
        case '>':
            get();
            if (peek() == '=') { get(); return {Tok::Op, ">=", loc}; }
            return {Tok::Op, ">", loc};
        case '&':
            get();
            if (peek() == '&') { get(); return {Tok::Op, "&&", loc}; }
            throw ParseError("single '&'; did you mean '&&'?", loc);
        case '|':
            get();
            if (peek() == '|') { get(); return {Tok::Op, "||", loc}; }
            throw ParseError("single '|'; did you mean '||'?", loc);
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", loc);
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

std::int64_t int_literal(const std::string& digits, bool negative, SourceLoc loc) {
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

// Expressions are parsed without committing to int or bool, then converted.
struct UExpr;
using UExprPtr = std::unique_ptr<UExpr>;

struct UExpr {
    enum Kind { Lit, BoolLitK, Var, Unary, Binary } kind;
    SourceLoc loc;
    std::int64_t lit = 0;
    bool blit = false;
    std::string name;
    std::string op; // Unary: "!", Binary: surface operator
    UExprPtr a, b;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const ParseOptions& opts)
        : toks_(std::move(toks)), opts_(opts) {}

    Program run() {
        Program p;
        while (cur().kind != Tok::End) {
            expect(Tok::KwInt, "'int'");
            Token name = expect(Tok::Ident, "a name");
            if (cur().kind == Tok::LParen) {
                p.functions.push_back(function(name));
            } else {
                p.globals.push_back(global(name));
            }
        }
        return p;
    }

private:
    const Token& cur(size_t ahead = 0) const {
        size_t i = at_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    Token take() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }
    Token expect(Tok kind, const char* what) {
        if (cur().kind != kind) {
            throw ParseError(std::string("expected ") + what + ", found '" + cur().text + "'",
                             cur().loc);
        }
        return take();
    }
    bool at_op(const char* name) const { return cur().kind == Tok::Op && cur().text == name; }

    std::int64_t literal_init() {
        bool neg = false;
        if (at_op("-")) {
            take();
            neg = true;
        }
        Token lit = expect(Tok::Int, "an integer literal");
        return int_literal(lit.text, neg, lit.loc);
    }

    Global global(const Token& name) {
        expect(Tok::Assign, "'='");
        std::int64_t v = literal_init();
        expect(Tok::Semi, "';'");
        return {name.text, v, name.loc};
    }

    FunDef function(const Token& name) {
        FunDef f;
        f.name = name.text;
        f.loc = name.loc;
        expect(Tok::LParen, "'('");
        if (cur().kind != Tok::RParen) {
            while (true) {
                expect(Tok::KwInt, "'int'");
                f.params.push_back(expect(Tok::Ident, "a parameter name").text);
                if (cur().kind != Tok::Comma) break;
                take();
            }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        while (cur().kind != Tok::KwReturn && cur().kind != Tok::End) {
            statement(f.body);
        }
        expect(Tok::KwReturn, "'return'");
        f.return_expr = int_expr();
        expect(Tok::Semi, "';'");
        expect(Tok::RBrace, "'}'");
        return f;
    }

    StmtSeq block() {
        StmtSeq seq;
        expect(Tok::LBrace, "'{'");
        while (cur().kind != Tok::RBrace && cur().kind != Tok::End) {
            statement(seq);
        }
        expect(Tok::RBrace, "'}'");
        return seq;
    }

    void statement(StmtSeq& seq) {
        switch (cur().kind) {
        case Tok::KwInt: {
            SourceLoc loc = take().loc;
            Token name = expect(Tok::Ident, "a variable name");
            expect(Tok::Assign, "'='");
            std::int64_t v = literal_init();
            expect(Tok::Semi, "';'");
            seq.push_back({LocalDecl{name.text, v}, loc});
            return;
        }
        case Tok::KwIf: {
            SourceLoc loc = take().loc;
            expect(Tok::LParen, "'('");
            BoolExprPtr cond = bool_expr();
            expect(Tok::RParen, "')'");
            StmtSeq then_body = block();
            StmtSeq else_body;
            if (cur().kind == Tok::KwElse) {
                take();
                else_body = block();
            }
            seq.push_back({If{std::move(cond), std::move(then_body), std::move(else_body)}, loc});
            return;
        }
        case Tok::KwWhile: {
            SourceLoc loc = take().loc;
            expect(Tok::LParen, "'('");
            BoolExprPtr cond = bool_expr();
            expect(Tok::RParen, "')'");
            seq.push_back({While{std::move(cond), block()}, loc});
            return;
        }
        case Tok::KwFor: {
            // for (init; cond; step) { body }  ~>  init; while (cond) { body step }
            SourceLoc loc = take().loc;
            expect(Tok::LParen, "'('");
            if (cur().kind == Tok::KwInt) {
                SourceLoc dloc = take().loc;
                Token name = expect(Tok::Ident, "a variable name");
                expect(Tok::Assign, "'='");
                seq.push_back({LocalDecl{name.text, literal_init()}, dloc});
            } else {
                Token name = expect(Tok::Ident, "a variable name");
                expect(Tok::Assign, "'='");
                seq.push_back({Assign{name.text, int_expr()}, name.loc});
            }
            expect(Tok::Semi, "';'");
            BoolExprPtr cond = bool_expr();
            expect(Tok::Semi, "';'");
            Token step_name = expect(Tok::Ident, "a variable name");
            expect(Tok::Assign, "'='");
            Stmt step{Assign{step_name.text, int_expr()}, step_name.loc};
            expect(Tok::RParen, "')'");
            StmtSeq body = block();
            body.push_back(std::move(step));
            seq.push_back({While{std::move(cond), std::move(body)}, loc});
            return;
        }
        case Tok::Ident: {
            Token name = take();
            expect(Tok::Assign, "'='");
            if (cur().kind == Tok::Ident && cur(1).kind == Tok::LParen) {
                CallAssign call;
                call.name = name.text;
                call.callee = take().text;
                take(); // (
                if (cur().kind != Tok::RParen) {
                    call.args.push_back(int_expr());
                    while (cur().kind == Tok::Comma) {
                        take();
                        call.args.push_back(int_expr());
                    }
                }
                expect(Tok::RParen, "')'");
                if (cur().kind == Tok::Op) {
                    throw ParseError("a call must be the entire right-hand side of the "
                                     "assignment; it cannot appear inside an expression",
                                     cur().loc);
                }
                expect(Tok::Semi, "';'");
                seq.push_back({std::move(call), name.loc});
                return;
            }
            IntExprPtr value = int_expr();
            expect(Tok::Semi, "';'");
            seq.push_back({Assign{name.text, std::move(value)}, name.loc});
            return;
        }
        default:
            throw ParseError("expected a statement, found '" + cur().text + "'", cur().loc);
        }
    }

    // ---- unified expression grammar, converted to int/bool afterwards ----

    IntExprPtr int_expr() { return to_int(parse_u(-1)); }
    BoolExprPtr bool_expr() { return to_bool(parse_u(-1)); }

    static int binary_prec(const std::string& op) {
        if (op == "*") return 4;
        if (op == "+" || op == "-") return 3;
        if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=")
            return 2;
        if (op == "&&") return 1;
        if (op == "||") return 0;
        if (op == "=>") return -1;
        return -100;
    }

    UExprPtr parse_u(int min_prec) {
        UExprPtr lhs = parse_unary();
        while (cur().kind == Tok::Op) {
            std::string op = cur().text;
            int prec = binary_prec(op);
            if (prec < min_prec) break;
            SourceLoc loc = take().loc;
            // => is right-associative, everything else associates left
            UExprPtr rhs = parse_u(op == "=>" ? prec : prec + 1);
            auto node = std::make_unique<UExpr>();
            node->kind = UExpr::Binary;
            node->loc = loc;
            node->op = std::move(op);
            node->a = std::move(lhs);
            node->b = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    UExprPtr parse_unary() {
        if (at_op("!")) {
            SourceLoc loc = take().loc;
            auto node = std::make_unique<UExpr>();
            node->kind = UExpr::Unary;
            node->loc = loc;
            node->op = "!";
            node->a = parse_unary();
            return node;
        }
        return parse_primary();
    }

    UExprPtr parse_primary() {
        auto node = std::make_unique<UExpr>();
        const Token& t = cur();
        node->loc = t.loc;
        switch (t.kind) {
        case Tok::Int:
            take();
            node->kind = UExpr::Lit;
            node->lit = int_literal(t.text, false, t.loc);
            return node;
        case Tok::Op:
            if (t.text == "-") {
                take();
                Token digits = expect(Tok::Int, "an integer literal after '-'");
                node->kind = UExpr::Lit;
                node->lit = int_literal(digits.text, true, digits.loc);
                return node;
            }
            break;
        case Tok::KwTrue:
        case Tok::KwFalse:
            take();
            node->kind = UExpr::BoolLitK;
            node->blit = t.kind == Tok::KwTrue;
            return node;
        case Tok::Ident:
            take();
            if (cur().kind == Tok::LParen) {
                throw ParseError("a call must be the entire right-hand side of an assignment; "
                                 "it cannot appear inside an expression",
                                 cur().loc);
            }
            node->kind = UExpr::Var;
            node->name = t.text;
            return node;
        case Tok::LParen: {
            take();
            UExprPtr inner = parse_u(-1);
            expect(Tok::RParen, "')'");
            return inner;
        }
        default:
            break;
        }
        throw ParseError("expected an expression, found '" + t.text + "'", t.loc);
    }

    IntExprPtr to_int(const UExprPtr& u) {
        switch (u->kind) {
        case UExpr::Lit:
            return mk_int_lit(u->lit, u->loc);
        case UExpr::Var:
            return mk_var_ref(u->name, u->loc);
        case UExpr::BoolLitK:
            throw ParseError("expected an integer expression, found a boolean", u->loc);
        case UExpr::Unary:
            throw ParseError("expected an integer expression, found '!'", u->loc);
        case UExpr::Binary: {
            IntOp op;
            if (u->op == "+") {
                op = IntOp::Add;
            } else if (u->op == "-") {
                op = IntOp::Sub;
            } else if (u->op == "*") {
                if (opts_.strict) {
                    throw ParseError("multiplication is an extension; rejected in strict mode",
                                     u->loc);
                }
                op = IntOp::Mul;
            } else {
                throw ParseError("expected an integer expression, found '" + u->op + "'",
                                 u->loc);
            }
            return mk_int_bin(op, to_int(u->a), to_int(u->b), u->loc);
        }
        }
        throw ParseError("expected an integer expression", u->loc);
    }

    BoolExprPtr to_bool(const UExprPtr& u) {
        switch (u->kind) {
        case UExpr::BoolLitK:
            return mk_bool_lit(u->blit, u->loc);
        case UExpr::Lit:
        case UExpr::Var:
            throw ParseError("expected a boolean expression, found an integer", u->loc);
        case UExpr::Unary:
            return mk_not(to_bool(u->a), u->loc);
        case UExpr::Binary: {
            const SourceLoc& loc = u->loc;
            const std::string& op = u->op;
            if (op == "==") return mk_cmp(CmpOp::Eq, to_int(u->a), to_int(u->b), loc);
            if (op == "<") return mk_cmp(CmpOp::Lt, to_int(u->a), to_int(u->b), loc);
            if (op == "!=") {
                return mk_not(mk_cmp(CmpOp::Eq, to_int(u->a), to_int(u->b), loc), loc);
            }
            if (op == "<=") {
                return mk_not(mk_cmp(CmpOp::Lt, to_int(u->b), to_int(u->a), loc), loc);
            }
            if (op == ">") return mk_cmp(CmpOp::Lt, to_int(u->b), to_int(u->a), loc);
            if (op == ">=") {
                return mk_not(mk_cmp(CmpOp::Lt, to_int(u->a), to_int(u->b), loc), loc);
            }
            if (op == "||") return mk_or(to_bool(u->a), to_bool(u->b), loc);
            if (op == "&&") {
                return mk_not(
                    mk_or(mk_not(to_bool(u->a), loc), mk_not(to_bool(u->b), loc), loc), loc);
            }
            if (op == "=>") return mk_or(mk_not(to_bool(u->a), loc), to_bool(u->b), loc);
            throw ParseError("expected a boolean expression, found '" + op + "'", loc);
        }
        }
        throw ParseError("expected a boolean expression", u->loc);
    }

    std::vector<Token> toks_;
    ParseOptions opts_;
    size_t at_ = 0;
};

} // namespace

Program parse_program(const std::string& text, const ParseOptions& opts) {
    return Parser(Lexer(text).run(), opts).run();
}

} // namespace s2l::syntax

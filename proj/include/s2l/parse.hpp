#pragma once

#include "s2l/ast.hpp"

#include <string>

namespace s2l::syntax {

struct ParseOptions {
    // Reject the multiplication extension (the core expression grammar has
    // only + and -).
    bool strict = false;
};

// Parse a source program. Throws ParseError with a position on bad input.
//
// Surface grammar (EBNF):
//
//   program   = { global | function } ;
//   global    = "int" ident "=" intlit ";" ;
//   function  = "int" ident "(" [ "int" ident { "," "int" ident } ] ")"
//               "{" { stmt } "return" expr ";" "}" ;
//   stmt      = "int" ident "=" intlit ";"
//             | ident "=" ident "(" [ expr { "," expr } ] ")" ";"
//             | ident "=" expr ";"
//             | "if" "(" expr ")" block [ "else" block ]
//             | "while" "(" expr ")" block
//             | "for" "(" forinit ";" expr ";" ident "=" expr ")" block ;
//   block     = "{" { stmt } "}" ;
//   forinit   = "int" ident "=" intlit | ident "=" expr ;
//   intlit    = [ "-" ] digits ;
//
// Expressions are parsed with one precedence chain (tightest first):
//   ! | * | + - | == != < <= > >= | && | "||" | =>
// and then checked to be integer- or boolean-sorted as the context demands.
// The extensions are desugared during parsing:
//   a != b  ~> !(a == b)      a <= b  ~> !(b < a)
//   a > b   ~> b < a          a >= b  ~> !(a < b)
//   p && q  ~> !(!p || !q)    p => q  ~> !p || q
//   if without else           ~> empty else branch
//   for (i; c; s) { b }       ~> i; while (c) { b; s }
// Function calls are only legal as the entire right-hand side of an
// assignment; a call in any other position is a parse error.
Program parse_program(const std::string& text, const ParseOptions& opts = {});

} // namespace s2l::syntax

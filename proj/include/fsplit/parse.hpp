#pragma once

// Text front-end for polynomials and ideals.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' natural)?
//   atom   := integer | variable | '(' expr ')'
//   ideal  := '(' expr (',' expr)* ')'
//
// Multiplication must be explicit; "2x" is rejected. Integer literals are
// reduced mod p. Errors carry the byte offset of the offending token.

#include <string_view>

#include "fsplit/ideal.hpp"
#include "fsplit/ring.hpp"

namespace fsplit {

Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx);
Ideal parse_ideal(std::string_view text, const ContextPtr& ctx);

}  // namespace fsplit

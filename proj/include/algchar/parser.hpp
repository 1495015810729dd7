#pragma once

#include <string>

#include "algchar/ratexpr.hpp"

namespace algchar {

/// Parse an expression over the declared variables of `ctx`.
///
/// Grammar (binding tightest first): `^` with nonnegative integer exponent,
/// unary `-`, `*` `/`, binary `+` `-`; integer literals; identifiers
/// `[a-zA-Z_][a-zA-Z0-9_]*`; `i` is the imaginary unit over Q(i) and
/// undeclared over Q; parentheses.  Throws ParseError with a byte position
/// on bad syntax or undeclared identifiers; MathError on division by a zero
/// polynomial.
RatExpr parse_expr(const std::string& text, const CtxPtr& ctx);

}  // namespace algchar

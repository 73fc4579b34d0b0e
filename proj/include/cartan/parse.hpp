#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/exact.hpp"
#include "cartan/rational_map.hpp"

namespace cartan {

/// Highest degree an expression may reach (and largest exponent literal).
inline constexpr int kMaxParseDegree = 256;

enum class TokenKind { Number, ImaginaryUnit, Variable, Plus, Minus, Star, Slash, Caret, LParen, RParen };

/// `text` views into the source passed to tokenize().
struct Token {
  TokenKind kind;
  std::string_view text;
  Span span;
};

/// Throws LexError on any byte outside the grammar's alphabet.
std::vector<Token> tokenize(std::string_view source);

struct Expr {
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind;
  Span span;
  exact::GaussianRational value;  // Constant
  int exponent = 0;               // Pow
  std::unique_ptr<Expr> lhs;      // every non-leaf kind
  std::unique_ptr<Expr> rhs;      // binary kinds
};

/// Precedence-climbing parse of the expression grammar:
///   expr   := expr ('+' | '-') expr | expr ('*' | '/' | <juxtaposition>) expr
///           | '-' expr | atom '^' int ('^' int)* | atom
///   atom   := number | 'i' | 'z' | '(' expr ')'
/// with '^' right-associative and binding tightest, unary minus next, then
/// products and sums. Throws ParseError with the span of the offending token.
std::unique_ptr<Expr> parse_expression(std::string_view source);

/// Evaluates the tree over Q(i)(z) and returns it in canonical form.
/// Throws ParseError on division by zero.
exact::Fraction evaluate(const Expr& expr);

/// Parses a rational map in z. Throws LexError, ParseError or DegreeZero.
RationalMap parse_map(std::string_view source);

/// Text that parse_map reads back as the same map.
std::string format_polynomial(const Polynomial& p);
std::string format_map(const RationalMap& map);

}  // namespace cartan

#include "cartan/parse.hpp"

#include <charconv>
#include <cmath>

namespace cartan {

namespace {

using exact::ExactPolynomial;
using exact::Fraction;
using exact::GaussianRational;
using exact::Integer;
using exact::Rational;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::size_t utf8_length(unsigned char lead) {
  if (lead >= 0xF0) return 4;
  if (lead >= 0xE0) return 3;
  if (lead >= 0xC0) return 2;
  return 1;
}

std::size_t scan_number(std::string_view s, std::size_t i) {
  const std::size_t start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    if (j >= s.size() || !is_digit(s[j]))
      throw LexError("malformed exponent in number literal", {start, j});
    while (j < s.size() && is_digit(s[j])) ++j;
    i = j;
  }
  return i;
}

Rational literal_value(std::string_view text, Span span) {
  Integer mantissa = 0;
  int scale = 0;
  std::size_t i = 0;
  bool fraction = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    if (text[i] == '.') {
      fraction = true;
      continue;
    }
    mantissa = mantissa * 10 + (text[i] - '0');
    if (fraction) --scale;
  }
  if (i < text.size()) {
    int e = 0;
    std::string_view digits = text.substr(i + 1);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || std::abs(e) > 400)
      throw LexError("number literal exponent out of range", span);
    scale += e;
  }
  Integer ten_power = boost::multiprecision::pow(Integer(10), std::abs(scale));
  return scale >= 0 ? Rational(mantissa * ten_power) : Rational(mantissa, ten_power);
}

class Parser {
public:
  Parser(std::string_view source) : source_(source), tokens_(tokenize(source)) {}

  std::unique_ptr<Expr> parse() {
    auto e = expression(0);
    if (pos_ < tokens_.size())
      throw ParseError("unexpected token '" + std::string(peek()->text) + "'", peek()->span,
                       "operator or end of input");
    return e;
  }

private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }
  Span end_span() const { return {source_.size(), source_.size()}; }

  static std::unique_ptr<Expr> node(Expr::Kind kind, Span span) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->span = span;
    return e;
  }

  static std::unique_ptr<Expr> binary(Expr::Kind kind, std::unique_ptr<Expr> l,
                                      std::unique_ptr<Expr> r) {
    auto e = node(kind, {l->span.begin, r->span.end});
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  static bool starts_implicit_operand(TokenKind k) {
    return k == TokenKind::ImaginaryUnit || k == TokenKind::Variable || k == TokenKind::LParen;
  }

  std::unique_ptr<Expr> expression(int min_bp) {
    auto lhs = prefix();
    while (const Token* t = peek()) {
      if (t->kind == TokenKind::Caret) {
        if (40 < min_bp) break;
        ++pos_;
        auto e = node(Expr::Kind::Pow, lhs->span);
        e->exponent = exponent_chain(e->span.end);
        e->span.end = tokens_[pos_ - 1].span.end;
        e->lhs = std::move(lhs);
        lhs = std::move(e);
        continue;
      }
      if (t->kind == TokenKind::Plus || t->kind == TokenKind::Minus) {
        if (10 < min_bp) break;
        ++pos_;
        const auto kind = t->kind == TokenKind::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
        lhs = binary(kind, std::move(lhs), expression(11));
        continue;
      }
      if (t->kind == TokenKind::Star || t->kind == TokenKind::Slash) {
        if (20 < min_bp) break;
        ++pos_;
        const auto kind = t->kind == TokenKind::Star ? Expr::Kind::Mul : Expr::Kind::Div;
        lhs = binary(kind, std::move(lhs), expression(21));
        continue;
      }
      if (starts_implicit_operand(t->kind)) {
        if (20 < min_bp) break;
        lhs = binary(Expr::Kind::Mul, std::move(lhs), expression(21));
        continue;
      }
      break;
    }
    return lhs;
  }

  int exponent_chain(std::size_t after) {
    const Token* t = peek();
    if (t == nullptr)
      throw ParseError("missing exponent", {after, after}, "non-negative integer literal");
    if (t->kind != TokenKind::Number ||
        t->text.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError("exponent must be a non-negative integer literal", t->span,
                       "non-negative integer literal");
    ++pos_;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t->text.data(), t->text.data() + t->text.size(), value);
    if (ec != std::errc{} || value > kMaxParseDegree)
      throw ParseError("exponent exceeds " + std::to_string(kMaxParseDegree), t->span,
                       "exponent at most " + std::to_string(kMaxParseDegree));
    if (const Token* next = peek(); next != nullptr && next->kind == TokenKind::Caret) {
      ++pos_;
      const Span span{t->span.begin, next->span.end};
      const int tail = exponent_chain(next->span.end);
      double power = std::pow(static_cast<double>(value), tail);
      if (power > kMaxParseDegree)
        throw ParseError("exponent exceeds " + std::to_string(kMaxParseDegree), span,
                         "exponent at most " + std::to_string(kMaxParseDegree));
      value = static_cast<int>(power);
    }
    return value;
  }

  std::unique_ptr<Expr> prefix() {
    const Token* t = peek();
    if (t == nullptr)
      throw ParseError("unexpected end of input", end_span(), "number, 'i', 'z', '(' or '-'");
    ++pos_;
    switch (t->kind) {
      case TokenKind::Minus:
      case TokenKind::Plus: {
        auto operand = expression(30);
        if (t->kind == TokenKind::Plus) return operand;
        auto e = node(Expr::Kind::Neg, {t->span.begin, operand->span.end});
        e->lhs = std::move(operand);
        return e;
      }
      case TokenKind::Number: {
        auto e = node(Expr::Kind::Constant, t->span);
        e->value = GaussianRational(literal_value(t->text, t->span));
        return e;
      }
      case TokenKind::ImaginaryUnit: {
        auto e = node(Expr::Kind::Constant, t->span);
        e->value = GaussianRational(0, 1);
        return e;
      }
      case TokenKind::Variable:
        return node(Expr::Kind::Variable, t->span);
      case TokenKind::LParen: {
        auto inner = expression(0);
        const Token* close = peek();
        if (close == nullptr || close->kind != TokenKind::RParen)
          throw ParseError("unbalanced parenthesis", close ? close->span : end_span(), "')'");
        ++pos_;
        inner->span = {t->span.begin, close->span.end};
        return inner;
      }
      default:
        --pos_;
        throw ParseError("unexpected token '" + std::string(t->text) + "'", t->span,
                         "number, 'i', 'z', '(' or '-'");
    }
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int degree_of(const Fraction& f) { return std::max(f.num.degree(), f.den.degree()); }

void check_degree(const Fraction& f, Span span) {
  if (degree_of(f) > kMaxParseDegree)
    throw ParseError("degree exceeds " + std::to_string(kMaxParseDegree), span,
                     "expression of degree at most " + std::to_string(kMaxParseDegree));
}

// Shortest decimal text for a double, as produced by to_chars.
std::string number_text(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Writes |c| (or c itself when it is not a real or imaginary multiple) with
// the sign factored out; returns true when the term should be negated.
bool coefficient_text(Complex c, bool omit_unit, std::string& out) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0) {
    if (!(omit_unit && std::abs(re) == 1)) out += number_text(std::abs(re));
    return std::signbit(re);
  }
  if (re == 0) {
    if (std::abs(im) != 1) out += number_text(std::abs(im));
    out += 'i';
    return std::signbit(im);
  }
  out += '(' + number_text(re) + (std::signbit(im) ? "-" : "+") + number_text(std::abs(im)) +
         "i)";
  return false;
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
      const std::size_t end = scan_number(s, i);
      out.push_back({TokenKind::Number, s.substr(i, end - i), {i, end}});
      i = end;
      continue;
    }
    TokenKind kind;
    switch (c) {
      case 'z': kind = TokenKind::Variable; break;
      case 'i': kind = TokenKind::ImaginaryUnit; break;
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '/': kind = TokenKind::Slash; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      default: {
        const std::size_t len =
            std::min(utf8_length(static_cast<unsigned char>(c)), s.size() - i);
        throw LexError("unexpected character '" + std::string(s.substr(i, len)) + "'",
                       {i, i + len});
      }
    }
    out.push_back({kind, s.substr(i, 1), {i, i + 1}});
    ++i;
  }
  return out;
}

std::unique_ptr<Expr> parse_expression(std::string_view source) {
  return Parser(source).parse();
}

Fraction evaluate(const Expr& e) {
  const ExactPolynomial one = ExactPolynomial::constant(GaussianRational(1));
  switch (e.kind) {
    case Expr::Kind::Constant:
      return {ExactPolynomial::constant(e.value), one};
    case Expr::Kind::Variable:
      return {ExactPolynomial::variable(), one};
    case Expr::Kind::Neg: {
      Fraction f = evaluate(*e.lhs);
      f.num = -f.num;
      return f;
    }
    case Expr::Kind::Pow: {
      Fraction f = evaluate(*e.lhs);
      if (static_cast<long>(degree_of(f)) * e.exponent > kMaxParseDegree)
        throw ParseError("degree exceeds " + std::to_string(kMaxParseDegree), e.span,
                         "expression of degree at most " + std::to_string(kMaxParseDegree));
      return exact::canonical({f.num.pow(e.exponent), f.den.pow(e.exponent)});
    }
    default:
      break;
  }
  const Fraction a = evaluate(*e.lhs);
  const Fraction b = evaluate(*e.rhs);
  Fraction r;
  switch (e.kind) {
    case Expr::Kind::Add:
      r = {a.num * b.den + b.num * a.den, a.den * b.den};
      break;
    case Expr::Kind::Sub:
      r = {a.num * b.den - b.num * a.den, a.den * b.den};
      break;
    case Expr::Kind::Mul:
      r = {a.num * b.num, a.den * b.den};
      break;
    case Expr::Kind::Div:
      if (b.num.is_zero()) throw ParseError("division by zero", e.rhs->span, "nonzero divisor");
      r = {a.num * b.den, a.den * b.num};
      break;
    default:
      throw InternalInvariantBroken("unhandled expression kind");
  }
  check_degree(r, e.span);
  if (r.num.is_zero()) return {ExactPolynomial{}, one};
  return exact::canonical(std::move(r));
}

RationalMap parse_map(std::string_view source) {
  const auto expr = parse_expression(source);
  const Fraction f = evaluate(*expr);
  if (degree_of(f) < 1) throw DegreeZero("expression does not depend on z");
  Polynomial p = f.num.to_polynomial();
  Polynomial q = f.den.to_polynomial();
  for (const auto* poly : {&p, &q})
    for (const Complex& c : poly->coeffs())
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw ParseError("coefficient out of floating-point range", expr->span,
                         "coefficients representable as doubles");
  return RationalMap::from_coprime(std::move(p), std::move(q));
}

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Complex c = p.coeff(k);
    if (c == Complex{}) continue;
    std::string term;
    const bool negative = coefficient_text(c, k > 0, term);
    if (k > 0) {
      if (!term.empty()) term += '*';
      term += 'z';
      if (k > 1) term += '^' + std::to_string(k);
    }
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

std::string format_map(const RationalMap& map) {
  const Polynomial& q = map.denominator();
  if (q.degree() == 0) {
    const Complex c = q.coeff(0);
    if (c == Complex(1.0)) return format_polynomial(map.numerator());
    std::vector<Complex> scaled(map.numerator().coeffs().begin(), map.numerator().coeffs().end());
    for (Complex& a : scaled) a /= c;
    return format_polynomial(Polynomial(std::move(scaled)));
  }
  return "(" + format_polynomial(map.numerator()) + ")/(" + format_polynomial(q) + ")";
}

}  // namespace cartan

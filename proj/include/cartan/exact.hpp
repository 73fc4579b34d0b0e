#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cartan/polynomial.hpp"

// Exact arithmetic over the Gaussian rationals Q(i). Used where coefficients
// are known to be exact (parsed literals, integer-valued maps) so that common
// factors can be cancelled without a tolerance.
namespace cartan::exact {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  Complex to_complex() const;
  static GaussianRational from_complex(Complex c);

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Ascending-coefficient polynomial over Q(i); the zero polynomial is empty.
class ExactPolynomial {
public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<GaussianRational> coeffs);
  static ExactPolynomial constant(GaussianRational c);
  static ExactPolynomial variable();
  /// Exact conversion: every finite double is a dyadic rational.
  static ExactPolynomial from_polynomial(const Polynomial& p);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  const GaussianRational& leading() const { return coeffs_.back(); }

  Polynomial to_polynomial() const;
  ExactPolynomial monic() const;
  ExactPolynomial pow(int exponent) const;

  ExactPolynomial& operator+=(const ExactPolynomial& o);
  ExactPolynomial& operator-=(const ExactPolynomial& o);
  ExactPolynomial& operator*=(const GaussianRational& s);
  friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) { return a += b; }
  friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) { return a -= b; }
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
  ExactPolynomial operator-() const;
  friend bool operator==(const ExactPolynomial&, const ExactPolynomial&) = default;

private:
  void normalize();
  std::vector<GaussianRational> coeffs_;
};

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<ExactPolynomial, ExactPolynomial> divmod(const ExactPolynomial& a,
                                                   const ExactPolynomial& b);
/// Monic greatest common divisor (zero when both inputs are zero).
ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b);

/// A quotient num/den with den nonzero.
struct Fraction {
  ExactPolynomial num;
  ExactPolynomial den;
};

/// Cancels the gcd, then scales num and den by a common rational so every
/// coefficient is a Gaussian integer, the integer components have no common
/// factor, and den's leading coefficient lies in {re > 0, im >= 0}.
Fraction canonical(Fraction f);

/// True when the pair is small enough for an exact gcd to be cheap and
/// every coefficient component is a dyadic rational with a modest exponent.
bool exact_backend_applies(const Polynomial& p, const Polynomial& q);

/// Exact reduction of p/q to coprime form; nullopt when the backend does not
/// apply. The result is scaled by a common factor only.
std::optional<std::pair<Polynomial, Polynomial>> reduce_exact(const Polynomial& p,
                                                              const Polynomial& q);

}  // namespace cartan::exact

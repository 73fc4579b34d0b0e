#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cartan {

using Complex = std::complex<double>;

/// Products whose shorter operand has fewer coefficients than this use
/// schoolbook convolution; longer ones go through the FFT.
inline constexpr std::size_t kFftThreshold = 64;

/// Dense univariate polynomial with complex double coefficients, stored in
/// ascending powers. The leading stored coefficient is never zero; the zero
/// polynomial has no coefficients and degree -1.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  static Polynomial constant(Complex c);
  static Polynomial monomial(Complex c, int power);
  /// The polynomial `z`.
  static Polynomial variable();

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^k; zero outside the stored range.
  Complex coeff(int k) const noexcept;
  Complex leading() const noexcept;

  Complex operator()(Complex z) const noexcept;
  /// Evaluates z^nominal * p(1/z) at s, i.e. sum c_i s^(nominal - i).
  /// Requires nominal >= degree().
  Complex eval_reversed(Complex s, int nominal) const noexcept;

  Polynomial derivative() const;
  /// Coefficient reversal with respect to a nominal degree.
  Polynomial reversed(int nominal) const;
  /// Coefficients of p(x + t) as a polynomial in t.
  std::vector<Complex> taylor_at(Complex x) const;
  /// Quotient of synthetic division by (z - root); the remainder is dropped.
  Polynomial deflate(Complex root) const;
  /// Drops leading coefficients with |c| <= rel_tol * max|c|.
  Polynomial trimmed(double rel_tol) const;

  double norm1() const noexcept;
  double norm2() const noexcept;
  double max_abs() const noexcept;
  /// True when every coefficient has integral real and imaginary parts.
  bool is_gaussian_integral() const noexcept;

  Polynomial pow(int exponent) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(Complex scale);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, Complex s) { return lhs *= s; }
  friend Polynomial operator*(Complex s, Polynomial rhs) { return rhs *= s; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  void normalize();
  std::vector<Complex> coeffs_;
};

Polynomial multiply_schoolbook(const Polynomial& a, const Polynomial& b);
Polynomial multiply_fft(const Polynomial& a, const Polynomial& b);

}  // namespace cartan

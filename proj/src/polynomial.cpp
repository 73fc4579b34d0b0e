#include "cartan/polynomial.hpp"

#include "cartan/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace cartan {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {
  normalize();
}

Polynomial Polynomial::constant(Complex c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(Complex c, int power) {
  std::vector<Complex> v(static_cast<std::size_t>(power) + 1, Complex{});
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::variable() { return monomial(1.0, 1); }

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex Polynomial::leading() const noexcept {
  return coeffs_.empty() ? Complex{} : coeffs_.back();
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::eval_reversed(Complex s, int nominal) const noexcept {
  // sum_{i} c_i s^(nominal - i): Horner over ascending coefficients, then the
  // missing top powers.
  Complex acc{};
  for (const Complex& c : coeffs_) acc = acc * s + c;
  for (int k = degree(); k < nominal; ++k) acc *= s;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reversed(int nominal) const {
  std::vector<Complex> r(static_cast<std::size_t>(nominal) + 1, Complex{});
  for (int i = 0; i <= degree(); ++i)
    r[static_cast<std::size_t>(nominal - i)] = coeffs_[static_cast<std::size_t>(i)];
  return Polynomial(std::move(r));
}

std::vector<Complex> Polynomial::taylor_at(Complex x) const {
  // Repeated synthetic division (Horner's scheme for the Taylor shift).
  std::vector<Complex> t(coeffs_);
  const std::size_t n = t.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) t[j - 1] += x * t[j];
  return t;
}

Polynomial Polynomial::deflate(Complex root) const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> q(coeffs_.size() - 1);
  Complex acc{};
  for (std::size_t i = coeffs_.size() - 1; i > 0; --i) {
    acc = acc * root + coeffs_[i];
    q[i - 1] = acc;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double bound = rel_tol * max_abs();
  std::vector<Complex> v(coeffs_);
  while (!v.empty() && std::abs(v.back()) <= bound) v.pop_back();
  return Polynomial(std::move(v));
}

double Polynomial::norm1() const noexcept {
  double s = 0;
  for (const Complex& c : coeffs_) s += std::abs(c);
  return s;
}

double Polynomial::norm2() const noexcept {
  double s = 0;
  for (const Complex& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double Polynomial::max_abs() const noexcept {
  double m = 0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::is_gaussian_integral() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::trunc(c.real()) == c.real() && std::trunc(c.imag()) == c.imag();
  });
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw InvalidArgument("negative polynomial power");
  Polynomial result = constant(1.0);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (Complex& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex scale) {
  for (Complex& c : coeffs_) c *= scale;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  if (std::min(lhs.coeffs_.size(), rhs.coeffs_.size()) < kFftThreshold)
    return multiply_schoolbook(lhs, rhs);
  return multiply_fft(lhs, rhs);
}

Polynomial multiply_schoolbook(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<Complex> out(ca.size() + cb.size() - 1, Complex{});
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
  return Polynomial(std::move(out));
}

namespace {

void fft(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<Complex> twiddle(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(len);
      twiddle[k] = {std::cos(angle), std::sin(angle)};
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * twiddle[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse)
    for (Complex& x : a) x /= static_cast<double>(n);
}

}  // namespace

Polynomial multiply_fft(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t out_size = a.coeffs().size() + b.coeffs().size() - 1;
  const std::size_t n = std::bit_ceil(out_size);
  std::vector<Complex> fa(a.coeffs().begin(), a.coeffs().end());
  std::vector<Complex> fb(b.coeffs().begin(), b.coeffs().end());
  fa.resize(n);
  fb.resize(n);
  fft(fa, false);
  fft(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft(fa, true);
  fa.resize(out_size);

  // Integer inputs with a product bound inside the exact double range are
  // rounded back to integers; otherwise components under the FFT error bound
  // are indistinguishable from zero and are dropped.
  const double bound = a.norm1() * b.norm1();
  if (a.is_gaussian_integral() && b.is_gaussian_integral() && bound < 0x1p50) {
    for (Complex& c : fa) c = {std::round(c.real()), std::round(c.imag())};
  } else {
    const double noise = 8.0 * std::log2(static_cast<double>(n)) *
                         std::numeric_limits<double>::epsilon() * a.norm2() * b.norm2();
    for (Complex& c : fa) {
      c = {std::abs(c.real()) <= noise ? 0.0 : c.real(),
           std::abs(c.imag()) <= noise ? 0.0 : c.imag()};
    }
  }
  return Polynomial(std::move(fa));
}

}  // namespace cartan

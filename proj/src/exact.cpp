#include "cartan/exact.hpp"

#include <cmath>
#include <cstdint>

#include <boost/integer/common_factor_rt.hpp>

namespace cartan::exact {

Complex GaussianRational::to_complex() const {
  return {re.convert_to<double>(), im.convert_to<double>()};
}

GaussianRational GaussianRational::from_complex(Complex c) {
  return {Rational(c.real()), Rational(c.imag())};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational n = o.norm();
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

ExactPolynomial::ExactPolynomial(std::vector<GaussianRational> coeffs)
    : coeffs_(std::move(coeffs)) {
  normalize();
}

ExactPolynomial ExactPolynomial::constant(GaussianRational c) {
  return ExactPolynomial({std::move(c)});
}

ExactPolynomial ExactPolynomial::variable() {
  return ExactPolynomial({GaussianRational(0), GaussianRational(1)});
}

ExactPolynomial ExactPolynomial::from_polynomial(const Polynomial& p) {
  std::vector<GaussianRational> c;
  c.reserve(p.coeffs().size());
  for (const Complex& x : p.coeffs()) c.push_back(GaussianRational::from_complex(x));
  return ExactPolynomial(std::move(c));
}

void ExactPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial ExactPolynomial::to_polynomial() const {
  std::vector<Complex> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(x.to_complex());
  return Polynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::monic() const {
  if (is_zero()) return {};
  ExactPolynomial r = *this;
  const GaussianRational inv = GaussianRational(1) / leading();
  r *= inv;
  return r;
}

ExactPolynomial ExactPolynomial::pow(int exponent) const {
  ExactPolynomial result = constant(GaussianRational(1));
  ExactPolynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator*=(const GaussianRational& s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return ExactPolynomial(std::move(out));
}

ExactPolynomial ExactPolynomial::operator-() const {
  ExactPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::pair<ExactPolynomial, ExactPolynomial> divmod(const ExactPolynomial& a,
                                                   const ExactPolynomial& b) {
  std::vector<GaussianRational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {ExactPolynomial{}, a};
  std::vector<GaussianRational> quot(static_cast<std::size_t>(a.degree() - db) + 1);
  const GaussianRational inv_lead = GaussianRational(1) / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const auto top = static_cast<std::size_t>(k + db);
    if (rem[top].is_zero()) continue;
    GaussianRational factor = rem[top] * inv_lead;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
    quot[static_cast<std::size_t>(k)] = std::move(factor);
  }
  return {ExactPolynomial(std::move(quot)), ExactPolynomial(std::move(rem))};
}

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
  while (!b.is_zero()) {
    ExactPolynomial r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// Rotates by a unit in {1, i, -1, -i} so that `lead` lands in {re > 0, im >= 0}.
GaussianRational quadrant_unit(const GaussianRational& lead) {
  if (lead.re > 0 && lead.im >= 0) return {1, 0};
  if (lead.re <= 0 && lead.im > 0) return {0, -1};
  if (lead.re < 0 && lead.im <= 0) return {-1, 0};
  return {0, 1};
}

}  // namespace

Fraction canonical(Fraction f) {
  const ExactPolynomial g = gcd(f.num, f.den);
  if (g.degree() > 0) {
    f.num = divmod(f.num, g).first;
    f.den = divmod(f.den, g).first;
  }

  Integer denominator_lcm = 1;
  auto visit = [&](const ExactPolynomial& p, auto&& fn) {
    for (const auto& c : p.coeffs()) {
      fn(c.re);
      fn(c.im);
    }
  };
  auto take_lcm = [&](const Rational& x) {
    denominator_lcm = boost::integer::lcm(denominator_lcm,
                                          Integer(boost::multiprecision::denominator(x)));
  };
  visit(f.num, take_lcm);
  visit(f.den, take_lcm);

  Integer content = 0;
  auto take_gcd = [&](const Rational& x) {
    const Integer n = boost::multiprecision::numerator(Rational(x * denominator_lcm));
    content = boost::integer::gcd(content, Integer(abs(n)));
  };
  visit(f.num, take_gcd);
  visit(f.den, take_gcd);
  if (content == 0) content = 1;

  GaussianRational scale = quadrant_unit(f.den.leading());
  scale *= GaussianRational(Rational(denominator_lcm, content));
  f.num *= scale;
  f.den *= scale;
  return f;
}

namespace {

// Dyadic with denominator at most 2^30 and modulus below `bound`.
bool small_dyadic(double x, double bound) {
  if (x == 0) return true;
  if (!std::isfinite(x) || std::abs(x) >= bound) return false;
  const double scaled = std::ldexp(x, 30);
  return std::trunc(scaled) == scaled;
}

bool all_small_dyadic(const Polynomial& r, double bound) {
  for (const Complex& c : r.coeffs())
    if (!small_dyadic(c.real(), bound) || !small_dyadic(c.imag(), bound)) return false;
  return true;
}

}  // namespace

bool exact_backend_applies(const Polynomial& p, const Polynomial& q) {
  constexpr int kMaxDegree = 96;
  if (p.degree() > kMaxDegree || q.degree() > kMaxDegree) return false;
  return all_small_dyadic(p, 0x1p52) && all_small_dyadic(q, 0x1p52);
}

namespace {

// Arithmetic in Z/P for primes P = 1 mod 4, where -1 has a square root and
// Z[i] maps onto the field.
class ModPrime {
public:
  ModPrime(std::uint64_t prime, std::uint64_t generator) : p_(prime) {
    i_ = pow(generator, (prime - 1) / 4);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  // x * 2^30 reduced mod p; x must pass the dyadic screen
  std::uint64_t scaled(double x) const {
    if (x == 0) return 0;
    int e = 0;
    auto m = static_cast<std::int64_t>(std::ldexp(std::frexp(x, &e), 53));
    int k = e - 53 + 30;
    if (k < 0) {
      m /= std::int64_t{1} << -k;
      k = 0;
    }
    const auto am = static_cast<std::uint64_t>(m < 0 ? -m : m) % p_;
    const std::uint64_t v = mul(am, pow(2, static_cast<std::uint64_t>(k)));
    return m < 0 ? sub(0, v) : v;
  }

  std::vector<std::uint64_t> reduce(const Polynomial& poly) const {
    std::vector<std::uint64_t> out;
    for (const Complex& c : poly.coeffs()) out.push_back(add(scaled(c.real()), mul(i_, scaled(c.imag()))));
    return out;
  }

  // Degree of gcd(a, b) over Z/P.
  int gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) const {
    auto trim = [](std::vector<std::uint64_t>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
      const std::uint64_t lead_inv = inv(b.back());
      while (a.size() >= b.size()) {
        const std::uint64_t f = mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = sub(a[shift + j], mul(f, b[j]));
        trim(a);
      }
      std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
  }

private:
  std::uint64_t p_;
  std::uint64_t i_ = 0;
};

// A constant gcd modulo a prime that keeps both degrees proves the pair
// coprime over Q(i); anything else is inconclusive.
bool coprime_by_modular_gcd(const Polynomial& p, const Polynomial& q) {
  for (const auto& [prime, generator] :
       {std::pair<std::uint64_t, std::uint64_t>{998244353, 3}, {167772161, 3}}) {
    const ModPrime f(prime, generator);
    const auto a = f.reduce(p);
    const auto b = f.reduce(q);
    if (a.back() == 0 || b.back() == 0) continue;
    if (f.gcd_degree(a, b) == 0) return true;
  }
  return false;
}

}  // namespace

std::optional<std::pair<Polynomial, Polynomial>> reduce_exact(const Polynomial& p,
                                                              const Polynomial& q) {
  if (p.degree() >= 1 && q.degree() >= 1 && all_small_dyadic(p, 0x1p200) &&
      all_small_dyadic(q, 0x1p200) && coprime_by_modular_gcd(p, q))
    return std::pair{p, q};
  if (!exact_backend_applies(p, q)) return std::nullopt;
  const ExactPolynomial ep = ExactPolynomial::from_polynomial(p);
  const ExactPolynomial eq = ExactPolynomial::from_polynomial(q);
  const ExactPolynomial g = gcd(ep, eq);
  if (g.degree() <= 0) return std::pair{p, q};
  return std::pair{divmod(ep, g).first.to_polynomial(), divmod(eq, g).first.to_polynomial()};
}

}  // namespace cartan::exact

#include "cartan/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "cartan/error.hpp"
#include "cartan/exact.hpp"
#include "cartan/roots.hpp"

namespace cartan {

namespace {

constexpr double kDegenerateRelTol = 1e-15;

// Cancels shared roots of p and q numerically, using the roots of whichever
// has lower degree.
std::pair<Polynomial, Polynomial> reduce_numeric(Polynomial p, Polynomial q) {
  const bool p_smaller = p.degree() <= q.degree();
  const Polynomial& small = p_smaller ? p : q;
  if (small.degree() < 1) return {std::move(p), std::move(q)};
  const RootSet rs = find_roots(small);
  for (const Root& r : rs.roots) {
    const int shared = std::min(r.multiplicity,
                                multiplicity_at(p_smaller ? q : p, r.location));
    for (int k = 0; k < shared; ++k) {
      p = p.deflate(r.location);
      q = q.deflate(r.location);
    }
  }
  return {std::move(p), std::move(q)};
}

std::size_t checked_power(std::size_t base, int exponent, std::size_t cap) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (base <= 1) return exponent == 0 ? 1 : base;
  std::size_t r = 1;
  for (int i = 0; i < exponent && r != kMax; ++i) r = r > kMax / base ? kMax : r * base;
  if (r > cap) throw SizeCapExceeded(r, cap);
  return r;
}

}  // namespace

RationalMap::RationalMap(Polynomial numerator, Polynomial denominator) {
  if (denominator.is_zero()) throw InvalidArgument("denominator is the zero polynomial");
  if (numerator.is_zero()) {
    p_ = Polynomial{};
    q_ = Polynomial{1.0};
  } else if (auto exact = exact::reduce_exact(numerator, denominator)) {
    p_ = std::move(exact->first);
    q_ = std::move(exact->second);
  } else {
    std::tie(p_, q_) = reduce_numeric(std::move(numerator), std::move(denominator));
  }
  finish();
}

RationalMap::RationalMap(Trusted, Polynomial numerator, Polynomial denominator)
    : p_(std::move(numerator)), q_(std::move(denominator)) {
  if (q_.is_zero()) throw InvalidArgument("denominator is the zero polynomial");
  finish();
}

void RationalMap::finish() {
  degree_ = std::max(std::max(p_.degree(), q_.degree()), 0);
  p_rev_ = p_.reversed(degree_);
  q_rev_ = q_.reversed(degree_);
}

RationalMap RationalMap::from_coprime(Polynomial numerator, Polynomial denominator) {
  return RationalMap(Trusted{}, std::move(numerator), std::move(denominator));
}

RationalMap RationalMap::identity() {
  return from_coprime(Polynomial::variable(), Polynomial{1.0});
}

SpherePoint RationalMap::operator()(const SpherePoint& p) const {
  const bool disk = p.in_unit_disk();
  const Complex u = p.chart_coordinate();
  const Complex a = chart_numerator(disk)(u);
  const Complex b = chart_denominator(disk)(u);
  const double scale = p_.norm1() + q_.norm1();
  if (std::max(std::abs(a), std::abs(b)) <= kDegenerateRelTol * scale)
    throw DegenerateEvaluation("numerator and denominator vanish together");
  return SpherePoint(a, b);
}

Complex RationalMap::chart_derivative(const SpherePoint& p) const {
  const bool disk = p.in_unit_disk();
  const Complex u = p.chart_coordinate();
  const Polynomial& a = chart_numerator(disk);
  const Polynomial& b = chart_denominator(disk);
  const Complex av = a(u);
  const Complex bv = b(u);
  const Complex wronskian = a.derivative()(u) * bv - av * b.derivative()(u);
  if (std::abs(bv) >= std::abs(av)) return wronskian / (bv * bv);
  return -wronskian / (av * av);
}

bool RationalMap::projectively_equal(const RationalMap& other, double rel_tol) const {
  const Polynomial cross = p_ * other.q_ - other.p_ * q_;
  const double scale = p_.max_abs() * other.q_.max_abs() + other.p_.max_abs() * q_.max_abs();
  return cross.max_abs() <= rel_tol * scale;
}

RationalMap derivative(const RationalMap& map) {
  const Polynomial& p = map.numerator();
  const Polynomial& q = map.denominator();
  return RationalMap(p.derivative() * q - p * q.derivative(), q * q);
}

RationalMap compose(const RationalMap& f, const RationalMap& g, std::size_t max_degree) {
  const auto df = static_cast<std::size_t>(f.degree());
  const auto dg = static_cast<std::size_t>(g.degree());
  if (dg != 0 && df > max_degree / dg) throw SizeCapExceeded(df * dg, max_degree);
  if (df * dg > max_degree) throw SizeCapExceeded(df * dg, max_degree);

  std::vector<Polynomial> gp{Polynomial{1.0}};
  std::vector<Polynomial> gq{Polynomial{1.0}};
  for (std::size_t k = 1; k <= df; ++k) {
    gp.push_back(gp.back() * g.numerator());
    gq.push_back(gq.back() * g.denominator());
  }
  auto homogenized = [&](const Polynomial& h) {
    Polynomial sum;
    for (int i = 0; i <= h.degree(); ++i) {
      const Complex c = h.coeff(i);
      if (c == Complex{}) continue;
      const auto k = static_cast<std::size_t>(i);
      sum += c * (gp[k] * gq[df - k]);
    }
    return sum;
  };
  Polynomial num = homogenized(f.numerator());
  Polynomial den = homogenized(f.denominator());
  if (num.is_zero()) return RationalMap::from_coprime(Polynomial{}, Polynomial{1.0});
  return RationalMap::from_coprime(std::move(num), std::move(den));
}

RationalMap iterate(const RationalMap& map, int n, std::size_t max_degree) {
  if (n < 0) throw InvalidArgument("iterate count must be non-negative");
  checked_power(static_cast<std::size_t>(map.degree()), n, max_degree);
  RationalMap result = RationalMap::identity();
  for (int i = 0; i < n; ++i) result = compose(map, result, max_degree);
  return result;
}

double normalized_resultant(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  const int m = p.degree();
  const int n = q.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return std::pow(std::abs(p.coeff(0)) / p.norm2(), n);
  // Res(p, q) = lc(p)^n prod_{p(r) = 0} q(r), accumulated in logarithms.
  const RootSet rs = find_roots(p);
  double log_res = n * std::log(std::abs(p.leading()));
  for (const Root& r : rs.roots) {
    const double v = std::abs(q(r.location));
    if (v == 0) return 0;
    log_res += r.multiplicity * std::log(v);
  }
  log_res -= n * std::log(p.norm2()) + m * std::log(q.norm2());
  return std::min(1.0, std::exp(log_res));
}

}  // namespace cartan

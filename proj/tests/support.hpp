#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cartan/polynomial.hpp"
#include "cartan/rational_map.hpp"
#include "cartan/sphere_point.hpp"

namespace cartan::testing {

/// Random map of the given degree with small integer coefficients; retries
/// until P and Q are coprime and the degree is exact.
inline RationalMap random_integer_map(std::mt19937_64& rng, int degree, int bound = 3) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  for (;;) {
    std::vector<Complex> p(static_cast<std::size_t>(degree) + 1);
    std::vector<Complex> q(static_cast<std::size_t>(degree) + 1);
    for (auto& c : p) c = coef(rng);
    for (auto& c : q) c = coef(rng);
    Polynomial pp(p);
    Polynomial qq(q);
    if (qq.is_zero() || pp.is_zero()) continue;
    if (std::max(pp.degree(), qq.degree()) != degree) continue;
    try {
      RationalMap m(pp, qq);
      if (m.degree() == degree) return m;
    } catch (...) {
    }
  }
}

inline SpherePoint random_point(std::mt19937_64& rng, double radius = 3.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return SpherePoint::finite({u(rng), u(rng)});
}

/// Schoolbook product on raw coefficient vectors, kept separate from the
/// library so it can serve as an oracle.
inline std::vector<Complex> naive_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::vector<Complex> naive_add(std::vector<Complex> a, const std::vector<Complex>& b,
                                      Complex scale = 1.0) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

inline std::vector<Complex> naive_derivative(const std::vector<Complex>& a) {
  std::vector<Complex> out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<double>(i));
  return out;
}

inline std::vector<Complex> coeff_vector(const Polynomial& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

inline double coeff_distance(std::vector<Complex> a, std::vector<Complex> b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n);
  b.resize(n);
  double d = 0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace cartan::testing

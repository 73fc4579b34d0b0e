#include "cartan/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "cartan/error.hpp"

namespace cartan {

int RootSet::total() const noexcept {
  int n = degree_at_infinity;
  for (const Root& r : roots) n += r.multiplicity;
  return n;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

// Horner evaluation of value, derivative and the absolute-coefficient bound
// sum |c_i| |x|^i, for ascending coefficients.
struct HornerResult {
  Complex value;
  Complex derivative;
  double bound;
};

HornerResult horner(std::span<const Complex> c, Complex x) {
  Complex v = 0;
  Complex d = 0;
  double b = 0;
  const double ax = std::abs(x);
  for (std::size_t i = c.size(); i-- > 0;) {
    d = d * x + v;
    v = v * x + c[i];
    b = b * ax + std::abs(c[i]);
  }
  return {v, d, b};
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

// Groups items whose pairwise distance is within `radius(i, j)`; returns the
// groups in order of their smallest member.
template <class Near>
std::vector<std::vector<std::size_t>> single_linkage(std::size_t n, Near near) {
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (near(i, j)) uf.unite(i, j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    if (slot[r] == n) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

// Simultaneous Aberth-Ehrlich iteration for a polynomial with nonzero
// constant term and degree >= 2.
std::vector<Complex> aberth(std::span<const Complex> c, const RootOptions& opt) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<Complex> rc(c.rbegin(), c.rend());

  std::mt19937_64 rng(opt.seed);
  const double radius =
      std::exp((std::log(std::abs(c.front())) - std::log(std::abs(c.back()))) / n);
  const double phase = 2 * std::numbers::pi * unit_interval(rng);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double rho = radius * (1 + 0.1 * (unit_interval(rng) - 0.5));
    const double theta =
        phase + 2 * std::numbers::pi * k / n + 0.3 * (unit_interval(rng) - 0.5) / n;
    z[static_cast<std::size_t>(k)] = std::polar(rho, theta);
  }

  const double stop = 4 * n * kEps;
  std::vector<bool> done(z.size(), false);
  for (int it = 0; it < opt.max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      Complex ratio;
      if (std::abs(z[k]) <= 1) {
        const HornerResult h = horner(c, z[k]);
        if (std::abs(h.value) <= stop * h.bound) {
          done[k] = true;
          continue;
        }
        ratio = h.value / h.derivative;
      } else {
        const Complex s = 1.0 / z[k];
        const HornerResult h = horner(rc, s);
        if (std::abs(h.value) <= stop * h.bound) {
          done[k] = true;
          continue;
        }
        ratio = z[k] / (static_cast<double>(n) - s * h.derivative / h.value);
      }
      all_done = false;
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        z[k] *= Complex(1 + 1e-3, 1e-3);
        continue;
      }
      Complex repulsion = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == k) continue;
        const Complex diff = z[k] - z[j];
        if (diff != Complex{}) repulsion += 1.0 / diff;
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) break;
  }
  return z;
}

// Lowest-order nonzero Taylor coefficient index of c at x, computed by
// repeated synthetic division so that only the leading few are formed.
int vanishing_order(std::span<const Complex> c, Complex x, double tol) {
  std::vector<Complex> q(c.begin(), c.end());
  std::vector<double> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = std::abs(c[i]);
  const double ax = std::abs(x);
  int order = 0;
  while (!q.empty()) {
    Complex v = 0;
    double b = 0;
    for (std::size_t i = q.size(); i-- > 0;) {
      const Complex next = v * x + q[i];
      const double next_b = b * ax + a[i];
      q[i] = v;
      a[i] = b;
      v = next;
      b = next_b;
    }
    q.pop_back();
    a.pop_back();
    if (std::abs(v) > tol * b) return order;
    ++order;
  }
  return order;
}

// An m-fold root of p is a simple root of the (m-1)-th derivative, where
// Newton converges quadratically from a cluster centroid.
Complex refine_multiple_root(const Polynomial& p, Complex x, int m) {
  Polynomial g = p;
  for (int k = 1; k < m; ++k) g = g.derivative();
  const Polynomial dg = g.derivative();
  const Complex start = x;
  for (int it = 0; it < 20; ++it) {
    const Complex slope = dg(x);
    if (slope == Complex{}) break;
    const Complex step = g(x) / slope;
    x -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(x))) break;
  }
  // keep the centroid if Newton wandered off
  return std::abs(x - start) <= 1e-3 * (1 + std::abs(start)) ? x : start;
}

}  // namespace

double root_residual(const Polynomial& p, Complex x) {
  if (p.is_zero()) return 0;
  if (std::abs(x) <= 1) {
    const HornerResult h = horner(p.coeffs(), x);
    return h.bound == 0 ? 0 : std::abs(h.value) / h.bound;
  }
  const std::vector<Complex> rc(p.coeffs().rbegin(), p.coeffs().rend());
  const HornerResult h = horner(rc, 1.0 / x);
  return h.bound == 0 ? 0 : std::abs(h.value) / h.bound;
}

int multiplicity_at(const Polynomial& p, Complex x, double tol) {
  if (p.is_zero()) throw InvalidArgument("multiplicity of the zero polynomial");
  if (std::abs(x) <= 1) return vanishing_order(p.coeffs(), x, tol);
  const std::vector<Complex> rc(p.coeffs().rbegin(), p.coeffs().rend());
  return vanishing_order(rc, 1.0 / x, tol);
}

RootSet find_roots(const Polynomial& p, const RootOptions& options) {
  if (p.is_zero()) throw InvalidArgument("roots of the zero polynomial");
  RootSet result;
  std::span<const Complex> c = p.coeffs();

  int zeros = 0;
  while (c[static_cast<std::size_t>(zeros)] == Complex{}) ++zeros;
  const std::span<const Complex> core = c.subspan(static_cast<std::size_t>(zeros));
  const Polynomial core_poly(std::vector<Complex>(core.begin(), core.end()));
  const int n = core_poly.degree();

  std::vector<Complex> approx;
  if (n == 1) {
    approx.push_back(-core[0] / core[1]);
  } else if (n >= 2) {
    approx = aberth(core, options);
  }

  std::vector<Root> clusters;
  {
    auto near = [&](std::size_t i, std::size_t j) {
      const double scale = 1 + std::max(std::abs(approx[i]), std::abs(approx[j]));
      return std::abs(approx[i] - approx[j]) <= options.cluster_scale * scale;
    };
    for (const auto& group : single_linkage(approx.size(), near)) {
      Complex sum = 0;
      for (std::size_t i : group) sum += approx[i];
      clusters.push_back({sum / static_cast<double>(group.size()),
                          static_cast<int>(group.size()), 0});
    }
  }

  auto near_wide = [&](std::size_t i, std::size_t j) {
    const Complex a = clusters[i].location;
    const Complex b = clusters[j].location;
    const double scale = 1 + std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= options.merge_scale * scale;
  };
  for (const auto& group : single_linkage(clusters.size(), near_wide)) {
    if (group.size() == 1) {
      Root r = clusters[group.front()];
      if (r.multiplicity > 1) {
        const Complex refined = refine_multiple_root(core_poly, r.location, r.multiplicity);
        if (multiplicity_at(core_poly, refined, options.multiplicity_tol) >= r.multiplicity)
          r.location = refined;
      }
      result.roots.push_back(r);
      continue;
    }
    Complex sum = 0;
    int m = 0;
    for (std::size_t i : group) {
      sum += clusters[i].location * static_cast<double>(clusters[i].multiplicity);
      m += clusters[i].multiplicity;
    }
    const Complex centroid = refine_multiple_root(core_poly, sum / static_cast<double>(m), m);
    if (multiplicity_at(core_poly, centroid, options.multiplicity_tol) >= m) {
      result.roots.push_back({centroid, m, 0});
    } else {
      for (std::size_t i : group) result.roots.push_back(clusters[i]);
    }
  }

  for (Root& r : result.roots) {
    // Drop rounding noise in a component that is tiny next to the modulus.
    const double noise = 16 * std::numeric_limits<double>::epsilon() * std::abs(r.location);
    Complex clean = r.location;
    if (std::abs(clean.imag()) <= noise) clean.imag(0);
    if (std::abs(clean.real()) <= noise) clean.real(0);
    if (clean != r.location && root_residual(core_poly, clean) <= options.residual_bound)
      r.location = clean;
    r.residual = root_residual(core_poly, r.location);
    if (!(r.residual <= options.residual_bound)) throw NoConvergence(options.max_iterations);
  }
  if (zeros > 0) result.roots.push_back({Complex{}, zeros, 0});

  std::sort(result.roots.begin(), result.roots.end(), [](const Root& a, const Root& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return result;
}

RootSet find_roots(const Polynomial& p, int nominal_degree, const RootOptions& options) {
  if (p.is_zero()) throw InvalidArgument("roots of the zero polynomial");
  if (nominal_degree < p.degree())
    throw InvalidArgument("nominal degree below the actual degree");
  const Polynomial trimmed = p.trimmed(options.leading_trim);
  RootSet result = find_roots(trimmed, options);
  result.degree_at_infinity = nominal_degree - trimmed.degree();
  return result;
}

}  // namespace cartan

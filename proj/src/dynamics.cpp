#include "cartan/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cartan/error.hpp"
#include "cartan/roots.hpp"

namespace cartan {

namespace {

constexpr double kSuperattractingTol = 1e-10;
constexpr double kIndifferentTol = 1e-8;
constexpr double kPeriodTol = 1e-6;
constexpr std::size_t kOrbitCap = 64;

MembershipVerdict make_verdict(Verdict v, CertificateKind kind, const CycleDatum* cycle,
                               int steps, std::string note) {
  MembershipVerdict m;
  m.verdict = v;
  m.certificate.kind = kind;
  if (cycle != nullptr) m.certificate.cycle = *cycle;
  m.certificate.steps = steps;
  m.note = std::move(note);
  return m;
}

// True when the orbit of z tracks the cycle from position k for three full
// periods.
bool stays_on_cycle(const RationalMap& map, SpherePoint z, const CycleDatum& cycle,
                    std::size_t k, double tol) {
  const std::size_t period = cycle.points.size();
  for (std::size_t s = 1; s <= 3 * period; ++s) {
    z = map(z);
    if (chordal_distance(z, cycle.points[(k + s) % period]) > tol) return false;
  }
  return true;
}

// Newton's method for R^n(u) = u in the chart around x. Roots of the
// expanded fixed-point polynomial lose accuracy as d^n grows; iterating the
// map itself does not.
SpherePoint polish_periodic(const RationalMap& map, SpherePoint x, int n) {
  for (int it = 0; it < 40; ++it) {
    const bool disk = x.in_unit_disk();
    SpherePoint y = x;
    Complex slope = 1.0;
    for (int k = 0; k < n; ++k) {
      slope *= map.chart_derivative(y);
      y = map(y);
    }
    Complex v = y.chart_coordinate();
    if (y.in_unit_disk() != disk) {
      if (v == Complex{}) return x;
      slope *= -1.0 / (v * v);
      v = 1.0 / v;
    }
    const Complex u = x.chart_coordinate();
    const Complex g = v - u;
    const Complex dg = slope - 1.0;
    if (std::abs(dg) < 1e-8 || !std::isfinite(std::abs(g / dg))) return x;
    const Complex step = g / dg;
    if (std::abs(step) > 0.5) return x;
    const Complex next = u - step;
    x = disk ? SpherePoint::finite(next) : SpherePoint(1.0, next);
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(u))) break;
  }
  return x;
}

bool closes_up(const RationalMap& map, const SpherePoint& x, int n) {
  SpherePoint y = x;
  for (int k = 0; k < n; ++k) y = map(y);
  return chordal_distance(x, y) <= kPeriodTol;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::InJulia: return "InJulia";
    case Verdict::InFatou: return "InFatou";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

const char* to_string(CycleCharacter c) {
  switch (c) {
    case CycleCharacter::Superattracting: return "Superattracting";
    case CycleCharacter::Attracting: return "Attracting";
    case CycleCharacter::Indifferent: return "Indifferent";
    case CycleCharacter::Repelling: return "Repelling";
  }
  return "?";
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::None: return "None";
    case CertificateKind::PreperiodicToRepelling: return "PreperiodicToRepelling";
    case CertificateKind::ConvergesToAttracting: return "ConvergesToAttracting";
    case CertificateKind::ConvergesToSuperattracting: return "ConvergesToSuperattracting";
    case CertificateKind::EscapeToInfinity: return "EscapeToInfinity";
  }
  return "?";
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

int branch_index(const RationalMap& map, const SpherePoint& p) {
  const bool disk = p.in_unit_disk();
  const Complex u = p.chart_coordinate();
  const Polynomial& a = map.chart_numerator(disk);
  const Polynomial& b = map.chart_denominator(disk);
  const Polynomial difference = a * b(u) - b * a(u);
  if (difference.is_zero()) throw InvalidArgument("branch index of a constant map");
  return multiplicity_at(difference, u);
}

std::vector<CriticalDatum> critical_points(const RationalMap& map) {
  const int d = map.degree();
  if (d < 2) throw DegreeTooLow("critical points need degree at least 2");
  const Polynomial& p = map.numerator();
  const Polynomial& q = map.denominator();
  const Polynomial wronskian = p.derivative() * q - p * q.derivative();
  const RootSet rs = find_roots(wronskian, 2 * d - 2);

  std::vector<CriticalDatum> out;
  int total = 0;
  auto add = [&](const SpherePoint& pt) {
    CriticalDatum c{pt, branch_index(map, pt), {}, {}};
    total += c.branch_index - 1;
    out.push_back(std::move(c));
  };
  for (const Root& r : rs.roots) add(SpherePoint::finite(r.location));
  if (rs.degree_at_infinity > 0) add(SpherePoint::infinity());
  if (total != 2 * d - 2) throw RiemannHurwitzMismatch(total, 2 * d - 2);
  return out;
}

CycleCharacter cycle_character(Complex multiplier) {
  const double m = std::abs(multiplier);
  if (m <= kSuperattractingTol) return CycleCharacter::Superattracting;
  if (m < 1 - kIndifferentTol) return CycleCharacter::Attracting;
  if (m > 1 + kIndifferentTol) return CycleCharacter::Repelling;
  return CycleCharacter::Indifferent;
}

Complex cycle_multiplier(const RationalMap& map, std::span<const SpherePoint> cycle) {
  Complex m = 1.0;
  for (const SpherePoint& p : cycle) m *= map.chart_derivative(p);
  return m;
}

std::vector<CycleDatum> periodic_points(const RationalMap& map, int n, std::size_t max_degree) {
  if (n < 1) throw InvalidArgument("period must be positive");
  const RationalMap iterate_n = iterate(map, n, max_degree);
  const Polynomial fixed =
      iterate_n.numerator() - Polynomial::variable() * iterate_n.denominator();
  if (fixed.is_zero()) throw InvalidArgument("every point is periodic");
  const RootSet rs = find_roots(fixed, iterate_n.degree() + 1);

  std::vector<SpherePoint> candidates;
  for (const Root& r : rs.roots) {
    const SpherePoint x = polish_periodic(map, SpherePoint::finite(r.location), n);
    if (closes_up(map, x, n)) candidates.push_back(x);
  }
  if (rs.degree_at_infinity > 0) candidates.push_back(SpherePoint::infinity());
  std::vector<bool> used(candidates.size(), false);

  std::vector<CycleDatum> cycles;
  auto already_found = [&](const SpherePoint& x) {
    for (const CycleDatum& c : cycles)
      for (const SpherePoint& p : c.points)
        if (chordal_distance(p, x) <= kPeriodTol) return true;
    return false;
  };
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (already_found(candidates[i])) continue;
    const SpherePoint x = candidates[i];
    std::vector<SpherePoint> orbit{x};
    SpherePoint y = x;
    for (int j = 1; j < n; ++j) {
      y = map(y);
      if (n % j == 0 && chordal_distance(y, x) <= kPeriodTol) break;
      orbit.push_back(y);
    }
    for (std::size_t k = 1; k < orbit.size(); ++k) {
      std::size_t best = candidates.size();
      double best_dist = kPeriodTol;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (used[c]) continue;
        const double dist = chordal_distance(orbit[k], candidates[c]);
        if (dist <= best_dist) {
          best_dist = dist;
          best = c;
        }
      }
      if (best < candidates.size()) {
        used[best] = true;
        orbit[k] = candidates[best];
      }
    }
    CycleDatum cycle;
    cycle.period = static_cast<int>(orbit.size());
    cycle.multiplier = cycle_multiplier(map, orbit);
    cycle.character = cycle_character(cycle.multiplier);
    cycle.points = std::move(orbit);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int default_max_period(int degree) {
  if (degree < 2) return 1;
  int p = 1;
  long power = degree;
  while (p < 6 && power * degree <= 256) {
    power *= degree;
    ++p;
  }
  return p;
}

CycleCatalog cycle_catalog(const RationalMap& map, const Budget& budget) {
  CycleCatalog catalog;
  const int limit = budget.max_period > 0 ? budget.max_period : default_max_period(map.degree());
  for (int p = 1; p <= limit; ++p) {
    std::vector<CycleDatum> cycles;
    try {
      cycles = periodic_points(map, p, budget.max_degree);
    } catch (const SizeCapExceeded&) {
      break;
    } catch (const NoConvergence&) {
      if (p == 1) throw;
      break;
    }
    for (auto& c : cycles)
      if (c.period == p) catalog.cycles.push_back(std::move(c));
    catalog.max_period = p;
  }
  return catalog;
}

double escape_radius(const RationalMap& map) {
  if (!map.is_polynomial() || map.degree() < 2)
    throw InvalidArgument("escape radius needs a polynomial map of degree at least 2");
  const Polynomial& p = map.numerator();
  const double q0 = std::abs(map.denominator().coeff(0));
  const int d = p.degree();
  double lower = 0;
  for (int i = 0; i < d; ++i) lower += std::abs(p.coeff(i)) / q0;
  const double lead = std::abs(p.leading()) / q0;
  return std::max(2.0, (2.0 + lower) / lead);
}

MembershipVerdict classify_point(const RationalMap& map, const SpherePoint& p,
                                 const Budget& budget) {
  return classify_point(map, cycle_catalog(map, budget), p, budget);
}

MembershipVerdict classify_point(const RationalMap& map, const CycleCatalog& catalog,
                                 const SpherePoint& p, const Budget& budget,
                                 std::vector<SpherePoint>* orbit) {
  const bool polynomial = map.is_polynomial() && map.degree() >= 2;
  const double radius = polynomial ? escape_radius(map) : 0;
  const CycleDatum* infinity_cycle = nullptr;
  for (const CycleDatum& c : catalog.cycles)
    if (c.period == 1 && c.points.front().is_infinity()) infinity_cycle = &c;

  SpherePoint z = p;
  for (int step = 0; step <= budget.max_iterations; ++step) {
    if (orbit != nullptr && orbit->size() < kOrbitCap) orbit->push_back(z);
    for (const CycleDatum& c : catalog.cycles) {
      for (std::size_t k = 0; k < c.points.size(); ++k) {
        const double dist = chordal_distance(z, c.points[k]);
        switch (c.character) {
          case CycleCharacter::Repelling:
            if (dist <= budget.snap_tol && stays_on_cycle(map, z, c, k, budget.snap_tol))
              return make_verdict(Verdict::InJulia, CertificateKind::PreperiodicToRepelling, &c,
                                  step, "lands on a repelling cycle");
            break;
          case CycleCharacter::Attracting:
            if (dist <= budget.convergence_tol)
              return make_verdict(Verdict::InFatou, CertificateKind::ConvergesToAttracting, &c,
                                  step, "converges to an attracting cycle");
            break;
          case CycleCharacter::Superattracting:
            if (dist <= budget.convergence_tol)
              return make_verdict(Verdict::InFatou, CertificateKind::ConvergesToSuperattracting,
                                  &c, step, "converges to a superattracting cycle");
            break;
          case CycleCharacter::Indifferent:
            if (dist <= budget.snap_tol && stays_on_cycle(map, z, c, k, budget.snap_tol))
              return make_verdict(Verdict::Undetermined, CertificateKind::None, &c, step,
                                  "lands on an indifferent cycle");
            break;
        }
      }
    }
    if (polynomial && !z.is_infinity() && std::abs(z.to_complex()) > radius)
      return make_verdict(Verdict::InFatou, CertificateKind::EscapeToInfinity, infinity_cycle,
                          step, "escapes to infinity");
    if (step < budget.max_iterations) z = map(z);
  }
  return make_verdict(Verdict::Undetermined, CertificateKind::None, nullptr,
                      budget.max_iterations, "iteration budget exhausted");
}

std::vector<CriticalDatum> classify_critical_points(const RationalMap& map,
                                                    const Budget& budget) {
  std::vector<CriticalDatum> crit = critical_points(map);
  const CycleCatalog catalog = cycle_catalog(map, budget);
  for (CriticalDatum& c : crit) c.membership = classify_point(map, catalog, c.point, budget, &c.orbit);
  return crit;
}

std::vector<FiberPoint> fiber(const RationalMap& map, const SpherePoint& target) {
  const Polynomial equation =
      target.w() * map.numerator() - target.z() * map.denominator();
  if (equation.is_zero()) throw InvalidArgument("fiber of a constant map");
  const RootSet rs = find_roots(equation, map.degree());
  std::vector<FiberPoint> out;
  for (const Root& r : rs.roots) out.push_back({SpherePoint::finite(r.location), r.multiplicity});
  if (rs.degree_at_infinity > 0) out.push_back({SpherePoint::infinity(), rs.degree_at_infinity});
  return out;
}

SpherePoint repelling_seed(const RationalMap& map) {
  for (int n = 1; n <= 2; ++n)
    for (const CycleDatum& c : periodic_points(map, n))
      if (c.character == CycleCharacter::Repelling) return c.representative();
  throw NoRepellingSeedFound("no repelling point of period one or two");
}

std::vector<SpherePoint> julia_sample(const RationalMap& map, std::size_t count, int depth,
                                      std::uint64_t seed) {
  if (depth < 0) throw InvalidArgument("depth must be non-negative");
  const SpherePoint start = repelling_seed(map);
  const auto d = static_cast<std::uint64_t>(map.degree());
  std::vector<SpherePoint> out;
  out.reserve(count);
  for (std::size_t path = 0; path < count; ++path) {
    std::mt19937_64 rng(mix_seed(seed ^ mix_seed(path + 1)));
    SpherePoint z = start;
    for (int level = 0; level < depth; ++level) {
      const std::vector<FiberPoint> pre = fiber(map, z);
      auto pick = static_cast<int>(rng() % d);
      for (const FiberPoint& f : pre) {
        if (pick < f.branch_index) {
          z = f.point;
          break;
        }
        pick -= f.branch_index;
      }
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace cartan

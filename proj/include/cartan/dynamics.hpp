#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartan/rational_map.hpp"

namespace cartan {

enum class Verdict { InJulia, InFatou, Undetermined };

enum class CycleCharacter { Superattracting, Attracting, Indifferent, Repelling };

struct CycleDatum {
  int period = 1;
  /// The cycle in orbit order starting at its representative.
  std::vector<SpherePoint> points;
  Complex multiplier;
  CycleCharacter character = CycleCharacter::Repelling;

  const SpherePoint& representative() const { return points.front(); }
};

enum class CertificateKind {
  None,
  PreperiodicToRepelling,
  ConvergesToAttracting,
  ConvergesToSuperattracting,
  EscapeToInfinity,
};

struct Certificate {
  CertificateKind kind = CertificateKind::None;
  /// The cycle landed on or converged to, when there is one.
  std::optional<CycleDatum> cycle;
  /// Iteration count at which the certificate was established.
  int steps = 0;
};

struct MembershipVerdict {
  Verdict verdict = Verdict::Undetermined;
  Certificate certificate;
  std::string note;
};

struct CriticalDatum {
  SpherePoint point;
  /// Local degree e >= 2.
  int branch_index = 2;
  MembershipVerdict membership;
  /// Forward orbit up to classification (capped).
  std::vector<SpherePoint> orbit;
};

struct Budget {
  int max_iterations = 10000;
  /// Chordal distance at which an orbit counts as captured by an attracting
  /// cycle.
  double convergence_tol = 1e-12;
  /// Chordal distance at which an orbit counts as having landed on a cycle.
  double snap_tol = 1e-9;
  /// Largest period searched; 0 picks the largest p with d^p <= 256, capped at 6.
  int max_period = 0;
  std::size_t max_degree = kDefaultMaxDegree;
};

/// Cycles of exact period 1..max_period, in increasing period.
struct CycleCatalog {
  int max_period = 0;
  std::vector<CycleDatum> cycles;
};

struct FiberPoint {
  SpherePoint point;
  int branch_index = 1;
};

const char* to_string(Verdict v);
const char* to_string(CycleCharacter c);
const char* to_string(CertificateKind k);

/// Order of vanishing of R(z) - R(p) at p, read in charts.
int branch_index(const RationalMap& map, const SpherePoint& p);

/// Critical points with branch indices; the indices minus one sum to
/// 2d - 2 or RiemannHurwitzMismatch is thrown. Requires degree >= 2.
std::vector<CriticalDatum> critical_points(const RationalMap& map);

/// Characterizes a cycle by its multiplier.
CycleCharacter cycle_character(Complex multiplier);
/// Product of chart derivatives along the given points.
Complex cycle_multiplier(const RationalMap& map, std::span<const SpherePoint> cycle);

/// All cycles whose exact period divides n, from the fixed points of R^n.
/// Throws SizeCapExceeded when R^n is too large.
std::vector<CycleDatum> periodic_points(const RationalMap& map, int n,
                                        std::size_t max_degree = kDefaultMaxDegree);

int default_max_period(int degree);
CycleCatalog cycle_catalog(const RationalMap& map, const Budget& budget = {});

/// Modulus beyond which every orbit of a polynomial map escapes to infinity.
double escape_radius(const RationalMap& map);

MembershipVerdict classify_point(const RationalMap& map, const SpherePoint& p,
                                 const Budget& budget = {});
MembershipVerdict classify_point(const RationalMap& map, const CycleCatalog& catalog,
                                 const SpherePoint& p, const Budget& budget = {},
                                 std::vector<SpherePoint>* orbit = nullptr);

/// Critical points, each classified against one shared catalog.
std::vector<CriticalDatum> classify_critical_points(const RationalMap& map,
                                                    const Budget& budget = {});

/// The d preimages of a point, grouped with their local degrees.
std::vector<FiberPoint> fiber(const RationalMap& map, const SpherePoint& target);

/// The first repelling point found among fixed points, then period-two points.
SpherePoint repelling_seed(const RationalMap& map);

/// `count` points of the depth-th backward orbit of a repelling periodic
/// point, choosing among preimages uniformly (with multiplicity) from a
/// per-path stream derived from the seed.
std::vector<SpherePoint> julia_sample(const RationalMap& map, std::size_t count, int depth,
                                      std::uint64_t seed);

/// SplitMix64 finalizer, used to derive independent streams from one seed.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace cartan

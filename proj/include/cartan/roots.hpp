#pragma once

#include <cstdint>
#include <vector>

#include "cartan/polynomial.hpp"

namespace cartan {

struct Root {
  Complex location;
  int multiplicity = 1;
  /// Backward error |p(x)| / sum |c_i| |x|^i at the reported location.
  double residual = 0;
};

/// Roots of a polynomial with multiplicity. When a nominal degree larger
/// than the actual degree was requested, the deficit is reported as a root
/// at infinity of that multiplicity.
struct RootSet {
  std::vector<Root> roots;
  int degree_at_infinity = 0;

  /// Finite multiplicities plus the multiplicity at infinity.
  int total() const noexcept;
};

struct RootOptions {
  /// Roots closer than cluster_scale * (1 + max|root|) are one root.
  double cluster_scale = 1e-7;
  /// Clusters within merge_scale * (1 + max|root|) are merged when the
  /// polynomial vanishes to the combined order at their centroid.
  double merge_scale = 1e-3;
  double residual_bound = 1e-9;
  int max_iterations = 1000;
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
  /// Relative size below which a Taylor coefficient counts as zero.
  double multiplicity_tol = 1e-8;
  /// Leading coefficients smaller than this relative to the largest are
  /// dropped before solving a nominal-degree problem.
  double leading_trim = 1e-13;
};

/// All roots of a nonzero polynomial by simultaneous Aberth iteration,
/// clustered into multiple roots and sorted by (real, imag). Throws
/// NoConvergence when some root misses the residual bound.
RootSet find_roots(const Polynomial& p, const RootOptions& options = {});

/// As above with degree_at_infinity = nominal_degree - deg p, after dropping
/// negligible leading coefficients.
RootSet find_roots(const Polynomial& p, int nominal_degree, const RootOptions& options = {});

/// Order of vanishing of p at x: the index of the first Taylor coefficient
/// at x that is not negligible relative to the same coefficient of the
/// polynomial with absolute-valued coefficients at |x|.
int multiplicity_at(const Polynomial& p, Complex x, double tol = 1e-8);

/// Backward error of x as a root of p.
double root_residual(const Polynomial& p, Complex x);

}  // namespace cartan

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cartan/orbit_tree.hpp"

namespace cartan {

struct SuiteCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// First failure, or a short summary when everything passed.
  std::string detail;
};

struct SuiteOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 7;
  /// Entrywise tolerance for identities that hold exactly on trees.
  double tol = 1e-12;
  /// Tolerance for comparisons against computed operator norms.
  double norm_tol = 1e-10;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;
  bool all_passed() const;
};

/// Randomized checks of the algebraic identities of the tree
/// representations: support relations, the conditional expectation,
/// composition and adjoint laws, support disjointness, diagonal words,
/// commutation and normalizer witnesses, the module inner product and
/// operator-norm bounds.
SuiteReport run_identity_suite(const OrbitTree& tree, const SuiteOptions& options = {});

/// Operator norm of random quasi-monomial matrices equals their largest
/// entry modulus.
SuiteCheck check_quasi_monomial_norms(std::size_t dim, const SuiteOptions& options);

/// rho_{m,n}(h) has norm between max|h| and max(d^m, d^n) max|h|.
SuiteCheck check_fiber_block_norms(const OrbitTree& tree, const SuiteOptions& options);

}  // namespace cartan

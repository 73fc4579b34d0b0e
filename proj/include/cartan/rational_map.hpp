#pragma once

#include <cstddef>

#include "cartan/polynomial.hpp"
#include "cartan/sphere_point.hpp"

namespace cartan {

/// Largest degree (coefficient count minus one) that composition and
/// iteration will produce before throwing SizeCapExceeded.
inline constexpr std::size_t kDefaultMaxDegree = 4096;

/// Normalized resultant below which a numerator/denominator pair is treated
/// as sharing a root.
inline constexpr double kCoprimeResultantThreshold = 1e-12;

/// R = P/Q as a holomorphic self-map of the sphere, with P and Q coprime and
/// degree max(deg P, deg Q). Immutable after construction.
class RationalMap {
public:
  /// Cancels common factors of P and Q: exactly over Q(i) when every
  /// coefficient is a small dyadic rational, otherwise by clustering the
  /// roots of Q against P. Throws InvalidArgument when Q is zero.
  RationalMap(Polynomial numerator, Polynomial denominator);

  /// Skips the common-factor check; the caller guarantees coprimality.
  static RationalMap from_coprime(Polynomial numerator, Polynomial denominator);
  static RationalMap identity();
  static RationalMap polynomial(Polynomial p) { return RationalMap(std::move(p), Polynomial{1.0}); }

  const Polynomial& numerator() const noexcept { return p_; }
  const Polynomial& denominator() const noexcept { return q_; }
  int degree() const noexcept { return degree_; }
  /// True when the denominator is a nonzero constant, so infinity is a
  /// totally invariant superattracting fixed point (for degree >= 2).
  bool is_polynomial() const noexcept { return q_.degree() == 0; }

  /// Homogeneous evaluation [P^(z,w) : Q^(z,w)] with both forms homogenized
  /// to degree(). Throws DegenerateEvaluation if both forms vanish.
  SpherePoint operator()(const SpherePoint& p) const;

  /// Derivative of R at p read in the standard charts around p and R(p)
  /// (affine coordinate inside the unit disk, 1/z outside). Products of these
  /// along a cycle give the cycle multiplier.
  Complex chart_derivative(const SpherePoint& p) const;

  /// Numerator and denominator of R in the source chart used at p: (P, Q)
  /// in the affine chart, their degree() reversals in the chart at infinity.
  const Polynomial& chart_numerator(bool unit_disk) const noexcept { return unit_disk ? p_ : p_rev_; }
  const Polynomial& chart_denominator(bool unit_disk) const noexcept { return unit_disk ? q_ : q_rev_; }

  /// Equality as functions: P1 Q2 - P2 Q1 vanishes relative to the operands.
  bool projectively_equal(const RationalMap& other, double rel_tol = 1e-9) const;

private:
  struct Trusted {};
  RationalMap(Trusted, Polynomial numerator, Polynomial denominator);
  void finish();

  Polynomial p_;
  Polynomial q_;
  Polynomial p_rev_;
  Polynomial q_rev_;
  int degree_ = 0;
};

inline SpherePoint eval(const RationalMap& map, const SpherePoint& p) { return map(p); }

/// R' = (P'Q - PQ') / Q^2 with common factors cancelled.
RationalMap derivative(const RationalMap& map);

/// f o g in coprime form; throws SizeCapExceeded when deg f * deg g exceeds
/// max_degree.
RationalMap compose(const RationalMap& f, const RationalMap& g,
                    std::size_t max_degree = kDefaultMaxDegree);

/// The n-th iterate, with the identity for n == 0.
RationalMap iterate(const RationalMap& map, int n, std::size_t max_degree = kDefaultMaxDegree);

/// |Res(P, Q)| / (|P|_2^deg Q * |Q|_2^deg P), in [0, 1]; zero exactly when P
/// and Q share a root.
double normalized_resultant(const Polynomial& p, const Polynomial& q);

}  // namespace cartan

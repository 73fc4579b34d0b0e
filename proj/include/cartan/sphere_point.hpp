#pragma once

#include <iosfwd>

#include "cartan/polynomial.hpp"

namespace cartan {

/// Absolute tolerance on |z1 w2 - z2 w1| used for projective equality.
/// Defaults to 1e-9; changing it is process-wide.
double projective_tolerance() noexcept;
void set_projective_tolerance(double tol);

/// A point [z : w] of the Riemann sphere. The pair is scaled so that the
/// coordinate of larger modulus is exactly 1; finite points inside the unit
/// disk read [c : 1] and everything else [1 : 1/c], with infinity at [1 : 0].
class SpherePoint {
public:
  /// Throws InvalidArgument when z == w == 0 or a coordinate is not finite.
  SpherePoint(Complex z, Complex w);

  static SpherePoint finite(Complex c) { return SpherePoint(c, 1.0); }
  static SpherePoint infinity() { return SpherePoint(1.0, 0.0); }

  Complex z() const noexcept { return z_; }
  Complex w() const noexcept { return w_; }

  bool is_infinity() const noexcept { return w_ == Complex{}; }
  /// True when the point lies in the closed unit disk, where the affine
  /// coordinate z/w is used; otherwise the coordinate at infinity w/z is.
  bool in_unit_disk() const noexcept { return w_ == Complex(1.0); }
  /// z/w in the unit disk, w/z outside it; always of modulus <= 1.
  Complex chart_coordinate() const noexcept { return in_unit_disk() ? z_ : w_; }
  /// Affine value z/w; infinite for the point at infinity.
  Complex to_complex() const noexcept;

  /// Cross-product test |z1 w2 - z2 w1| <= tol on the scaled coordinates.
  bool projectively_equal(const SpherePoint& other,
                          double tol = projective_tolerance()) const noexcept;

private:
  Complex z_;
  Complex w_;
};

/// Chordal-type distance |z1 w2 - z2 w1| / (|p| |q|) in [0, 1].
double chordal_distance(const SpherePoint& p, const SpherePoint& q) noexcept;

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

}  // namespace cartan

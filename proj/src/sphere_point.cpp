#include "cartan/sphere_point.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>

#include "cartan/error.hpp"

namespace cartan {

namespace {
std::atomic<double> g_projective_tolerance{1e-9};
}

double projective_tolerance() noexcept { return g_projective_tolerance.load(); }

void set_projective_tolerance(double tol) {
  if (!(tol > 0)) throw InvalidArgument("projective tolerance must be positive");
  g_projective_tolerance.store(tol);
}

SpherePoint::SpherePoint(Complex z, Complex w) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(w.real()) ||
      !std::isfinite(w.imag()))
    throw InvalidArgument("sphere point coordinates must be finite");
  if (z == Complex{} && w == Complex{})
    throw InvalidArgument("[0 : 0] is not a point of the sphere");
  if (std::abs(w) >= std::abs(z)) {
    z_ = z / w;
    w_ = 1.0;
  } else {
    w_ = w / z;
    z_ = 1.0;
  }
}

Complex SpherePoint::to_complex() const noexcept {
  if (is_infinity()) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return in_unit_disk() ? z_ : 1.0 / w_;
}

bool SpherePoint::projectively_equal(const SpherePoint& other, double tol) const noexcept {
  return std::abs(z_ * other.w_ - other.z_ * w_) <= tol;
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) noexcept {
  const double np = std::sqrt(std::norm(p.z()) + std::norm(p.w()));
  const double nq = std::sqrt(std::norm(q.z()) + std::norm(q.w()));
  return std::abs(p.z() * q.w() - q.z() * p.w()) / (np * nq);
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinity()) return os << "inf";
  const Complex c = p.to_complex();
  const double re = c.real() == 0 ? 0.0 : c.real();
  const double im = c.imag() == 0 ? 0.0 : c.imag();
  return os << '(' << re << (im < 0 ? "-" : "+") << std::abs(im) << "i)";
}

}  // namespace cartan

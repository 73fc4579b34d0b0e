#include "cartan/escape_grid.hpp"

#include <cmath>
#include <optional>

#include "cartan/error.hpp"

namespace cartan {

namespace {

double chordal(Complex a, Complex b) {
  return std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b)));
}

struct Attractor {
  std::uint32_t id;
  SpherePoint point;
};

}  // namespace

const char* to_string(GridCode::Kind kind) {
  switch (kind) {
    case GridCode::Kind::Escape: return "Escape";
    case GridCode::Kind::Attractor: return "Attractor";
    case GridCode::Kind::NearJulia: return "NearJulia";
    case GridCode::Kind::Unresolved: return "Unresolved";
  }
  return "?";
}

Complex pixel_center(const Viewport& vp, int width, int height, int col, int row) {
  const double dx = (vp.x1 - vp.x0) / width;
  const double dy = (vp.y1 - vp.y0) / height;
  return {vp.x0 + (col + 0.5) * dx, vp.y1 - (row + 0.5) * dy};
}

EscapeGrid escape_grid(const RationalMap& map, const Viewport& vp, int width, int height,
                       const GridOptions& options) {
  EscapeGrid grid;
  grid.width = std::max(width, 0);
  grid.height = std::max(height, 0);
  if (grid.width == 0 || grid.height == 0) return grid;
  if (!std::isfinite(vp.x0) || !std::isfinite(vp.x1) || !std::isfinite(vp.y0) ||
      !std::isfinite(vp.y1) || !(vp.x0 < vp.x1) || !(vp.y0 < vp.y1))
    throw InvalidArgument("viewport needs x0 < x1 and y0 < y1");
  if (map.degree() < 2) throw DegreeTooLow("rendering needs degree at least 2");

  const bool polynomial = map.is_polynomial();
  const CycleCatalog catalog = cycle_catalog(map);
  std::vector<Attractor> attractors;
  std::uint32_t next_id = 0;
  for (const CycleDatum& c : catalog.cycles) {
    if (c.character != CycleCharacter::Attracting &&
        c.character != CycleCharacter::Superattracting)
      continue;
    if (polynomial && c.points.front().is_infinity()) continue;
    for (const SpherePoint& p : c.points) attractors.push_back({next_id, p});
    ++next_id;
  }

  const double radius = polynomial ? escape_radius(map) : 0;
  std::vector<Complex> monic;
  if (polynomial) {
    const Complex q0 = map.denominator().coeff(0);
    for (const Complex& c : map.numerator().coeffs()) monic.push_back(c / q0);
  }
  std::vector<Complex> finite_attractors;
  for (const Attractor& a : attractors)
    finite_attractors.push_back(a.point.is_infinity() ? Complex{} : a.point.to_complex());

  grid.codes.resize(static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(grid.height));
  std::vector<std::size_t> pending;
  const auto max_iter = static_cast<std::uint32_t>(std::max(options.max_iterations, 0));

  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      const std::size_t index = static_cast<std::size_t>(row) * grid.width + col;
      const Complex c = pixel_center(vp, grid.width, grid.height, col, row);
      std::optional<GridCode> code;
      if (polynomial) {
        Complex z = c;
        for (std::uint32_t n = 0; n <= max_iter && !code; ++n) {
          if (std::abs(z) > radius) {
            code = GridCode{GridCode::Kind::Escape, n, 0};
            break;
          }
          for (std::size_t a = 0; a < attractors.size(); ++a) {
            if (attractors[a].point.is_infinity()) continue;
            if (chordal(z, finite_attractors[a]) <= options.capture_tol) {
              code = GridCode{GridCode::Kind::Attractor, n, attractors[a].id};
              break;
            }
          }
          Complex v = 0;
          for (std::size_t i = monic.size(); i-- > 0;) v = v * z + monic[i];
          z = v;
        }
      } else {
        SpherePoint z = SpherePoint::finite(c);
        for (std::uint32_t n = 0; n <= max_iter && !code; ++n) {
          for (const Attractor& a : attractors) {
            if (chordal_distance(z, a.point) <= options.capture_tol) {
              code = GridCode{GridCode::Kind::Attractor, n, a.id};
              break;
            }
          }
          z = map(z);
        }
      }
      if (code) {
        grid.codes[index] = *code;
      } else {
        grid.codes[index] = GridCode{GridCode::Kind::Unresolved, max_iter, 0};
        pending.push_back(index);
      }
    }
  }

  if (pending.empty()) return grid;
  std::vector<Complex> samples;
  try {
    for (const SpherePoint& s :
         julia_sample(map, options.julia_samples, options.julia_depth, options.seed))
      if (!s.is_infinity()) samples.push_back(s.to_complex());
  } catch (const NoRepellingSeedFound&) {
    return grid;
  }
  const double dx = (vp.x1 - vp.x0) / grid.width;
  const double dy = (vp.y1 - vp.y0) / grid.height;
  const double near = options.near_julia_pixels * std::hypot(dx, dy);
  for (std::size_t index : pending) {
    const int row = static_cast<int>(index / grid.width);
    const int col = static_cast<int>(index % grid.width);
    const Complex c = pixel_center(vp, grid.width, grid.height, col, row);
    for (const Complex& s : samples) {
      if (std::abs(c - s) <= near) {
        grid.codes[index].kind = GridCode::Kind::NearJulia;
        break;
      }
    }
  }
  return grid;
}

}  // namespace cartan

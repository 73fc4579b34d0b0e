#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cartan/dynamics.hpp"

namespace cartan {

/// Axis-aligned window [x0, x1] x [y0, y1] of the affine plane.
struct Viewport {
  double x0 = -2;
  double y0 = -2;
  double x1 = 2;
  double y1 = 2;
};

/// Per-pixel outcome. Escape: left the escape radius after `iterations`
/// steps. Attractor: captured by attracting cycle number `attractor` (in
/// catalog order). NearJulia: undecided within budget but within a pixel or
/// two of a sampled Julia point, or still bounded when the budget ran out.
/// Unresolved: nothing could be said.
struct GridCode {
  enum class Kind : std::uint8_t { Escape, Attractor, NearJulia, Unresolved };
  Kind kind = Kind::Unresolved;
  std::uint32_t iterations = 0;
  std::uint32_t attractor = 0;

  friend bool operator==(const GridCode&, const GridCode&) = default;
};

const char* to_string(GridCode::Kind kind);

struct GridOptions {
  int max_iterations = 1000;
  /// Chordal distance at which a pixel orbit counts as captured.
  double capture_tol = 1e-9;
  std::size_t julia_samples = 4096;
  int julia_depth = 24;
  std::uint64_t seed = 0xC0FFEE;
  /// NearJulia radius in pixel diagonals.
  double near_julia_pixels = 1.5;
};

/// Row-major codes, row 0 at the top (y near y1). Pixel (col, row) samples
/// x0 + (col + 1/2) dx, y1 - (row + 1/2) dy.
struct EscapeGrid {
  int width = 0;
  int height = 0;
  std::vector<GridCode> codes;

  const GridCode& at(int col, int row) const {
    return codes[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(col)];
  }
};

/// Pixel center of (col, row) for the given viewport and resolution.
Complex pixel_center(const Viewport& vp, int width, int height, int col, int row);

EscapeGrid escape_grid(const RationalMap& map, const Viewport& viewport, int width, int height,
                       const GridOptions& options = {});

using Rgb = std::array<std::uint8_t, 3>;

/// Integer-only palette: escape counts run along a quadratic Bernstein
/// blend of three anchor colors, attractors cycle through a fixed table,
/// NearJulia is white and Unresolved black.
Rgb palette(const GridCode& code, int max_iterations);

/// Binary PPM (P6) bytes for a grid.
std::string encode_ppm(const EscapeGrid& grid, int max_iterations);

}  // namespace cartan

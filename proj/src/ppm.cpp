#include <algorithm>

#include "cartan/escape_grid.hpp"

namespace cartan {

namespace {

constexpr Rgb kEscapeLow{0, 7, 100};
constexpr Rgb kEscapeMid{32, 107, 203};
constexpr Rgb kEscapeHigh{237, 255, 255};
constexpr int kEscapeBands = 63;

constexpr Rgb kAttractorColors[] = {
    {255, 170, 0}, {200, 40, 40},  {40, 160, 60},  {150, 60, 180},
    {230, 120, 160}, {120, 200, 200}, {180, 140, 60}, {90, 90, 90},
};

}  // namespace

Rgb palette(const GridCode& code, int max_iterations) {
  switch (code.kind) {
    case GridCode::Kind::Escape: {
      const int bands = std::clamp(max_iterations, 1, kEscapeBands);
      const int k = std::min(static_cast<int>(code.iterations), bands);
      const int t = k * 255 / bands;
      const int s = 255 - t;
      Rgb out{};
      for (std::size_t i = 0; i < 3; ++i) {
        const int v = kEscapeLow[i] * s * s + 2 * kEscapeMid[i] * s * t + kEscapeHigh[i] * t * t;
        out[i] = static_cast<std::uint8_t>(v / (255 * 255));
      }
      return out;
    }
    case GridCode::Kind::Attractor:
      return kAttractorColors[code.attractor % std::size(kAttractorColors)];
    case GridCode::Kind::NearJulia:
      return {255, 255, 255};
    case GridCode::Kind::Unresolved:
      return {0, 0, 0};
  }
  return {0, 0, 0};
}

std::string encode_ppm(const EscapeGrid& grid, int max_iterations) {
  std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) +
                    "\n255\n";
  out.reserve(out.size() + 3 * grid.codes.size());
  for (const GridCode& code : grid.codes) {
    const Rgb c = palette(code, max_iterations);
    out.append(reinterpret_cast<const char*>(c.data()), 3);
  }
  return out;
}

}  // namespace cartan

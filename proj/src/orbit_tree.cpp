#include "cartan/orbit_tree.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cartan/dynamics.hpp"
#include "cartan/error.hpp"

namespace cartan {

namespace {

constexpr double kEdgeTol = 1e-8;

class Screen {
public:
  Screen(const RationalMap& map, int p_max, double tol)
      : map_(map), p_max_(p_max), tol_(tol) {
    for (const CriticalDatum& c : critical_points(map)) critical_.push_back(c.point);
  }

  bool generic(const SpherePoint& x) const {
    for (const SpherePoint& c : critical_)
      if (chordal_distance(x, c) <= tol_) return false;
    SpherePoint y = x;
    for (int p = 1; p <= p_max_; ++p) {
      y = map_(y);
      if (chordal_distance(x, y) <= tol_) return false;
    }
    return true;
  }

private:
  const RationalMap& map_;
  int p_max_;
  double tol_;
  std::vector<SpherePoint> critical_;
};

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

SpherePoint jittered(const SpherePoint& hint, double radius, std::mt19937_64& rng) {
  const Complex offset =
      std::polar(radius * std::sqrt(unit_interval(rng)), 2 * std::numbers::pi * unit_interval(rng));
  if (hint.in_unit_disk()) return SpherePoint::finite(hint.z() + offset);
  return SpherePoint(1.0, hint.w() + offset);
}

}  // namespace

std::optional<NodeId> OrbitTree::image(NodeId x, int n) const {
  for (int i = 0; i < n; ++i) {
    x = node(x).image;
    if (x == kNoNode) return std::nullopt;
  }
  return x;
}

std::optional<std::size_t> tree_node_count(int degree, int m_max, int k_max, std::size_t cap) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (int k = 0; k <= k_max; ++k) {
    total += level;
    if (total > cap) return std::nullopt;
    if (k < k_max) {
      if (level > cap / static_cast<std::size_t>(degree)) return std::nullopt;
      level *= static_cast<std::size_t>(degree);
    }
  }
  total += static_cast<std::size_t>(m_max);
  if (total > cap) return std::nullopt;
  return total;
}

OrbitTree build_orbit_tree(const RationalMap& map, const SpherePoint& base_hint, int m_max,
                           int k_max, int p_max, std::uint64_t seed,
                           const TreeOptions& options) {
  const int d = map.degree();
  if (d < 2) throw DegreeTooLow("orbit trees need degree at least 2");
  if (m_max < 0 || k_max < 0 || p_max < 0) throw InvalidArgument("depths must be non-negative");
  const auto count = tree_node_count(d, m_max, k_max, options.max_nodes);
  if (!count) {
    double requested = static_cast<double>(m_max);
    for (int k = 0; k <= k_max; ++k) requested += std::pow(static_cast<double>(d), k);
    const double ceiling = static_cast<double>(std::numeric_limits<std::size_t>::max());
    throw SizeCapExceeded(
        requested >= ceiling ? std::numeric_limits<std::size_t>::max()
                             : static_cast<std::size_t>(requested),
        options.max_nodes);
  }

  const Screen screen(map, p_max, options.generic_tol);
  std::mt19937_64 rng(mix_seed(seed));

  for (int attempt = 0; attempt <= options.retry_cap; ++attempt) {
    const SpherePoint base =
        attempt == 0 ? base_hint : jittered(base_hint, options.jitter, rng);
    if (!screen.generic(base)) continue;

    OrbitTree tree(map, m_max, k_max);
    tree.nodes_.reserve(*count);
    tree.nodes_.push_back({base, 0, kNoNode, {}});
    bool ok = true;

    std::size_t level_begin = 0;
    for (int level = 1; level <= k_max && ok; ++level) {
      const std::size_t level_end = tree.nodes_.size();
      for (std::size_t parent = level_begin; parent < level_end && ok; ++parent) {
        const SpherePoint target = tree.nodes_[parent].point;
        const std::vector<FiberPoint> pre = fiber(map, target);
        if (pre.size() != static_cast<std::size_t>(d)) {
          ok = false;
          break;
        }
        for (std::size_t i = 0; i < pre.size() && ok; ++i) {
          for (std::size_t j = 0; j < i; ++j)
            if (chordal_distance(pre[i].point, pre[j].point) <= options.generic_tol) ok = false;
          if (!screen.generic(pre[i].point) ||
              chordal_distance(map(pre[i].point), target) > kEdgeTol)
            ok = false;
        }
        if (!ok) break;
        for (const FiberPoint& f : pre) {
          const auto id = static_cast<NodeId>(tree.nodes_.size());
          tree.nodes_.push_back({f.point, -level, static_cast<NodeId>(parent), {}});
          tree.nodes_[parent].preimages.push_back(id);
        }
      }
      level_begin = level_end;
    }
    if (!ok) continue;

    NodeId top = tree.base();
    for (int j = 1; j <= m_max && ok; ++j) {
      const SpherePoint y = map(tree.nodes_[top].point);
      if (!screen.generic(y)) {
        ok = false;
        break;
      }
      const auto id = static_cast<NodeId>(tree.nodes_.size());
      tree.nodes_.push_back({y, j, kNoNode, {top}});
      tree.nodes_[top].image = id;
      top = id;
    }
    if (ok) return tree;
  }
  throw GenericBaseNotFound("no generic base point near the hint after " +
                            std::to_string(options.retry_cap) + " retries");
}

}  // namespace cartan

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cartan/rational_map.hpp"
#include "cartan/tree_matrix.hpp"

namespace cartan {

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct TreeNode {
  SpherePoint point;
  /// Signed height: 0 at the base, -k on the k-th backward level, +j at the
  /// j-th forward image.
  int height = 0;
  /// Tree node realizing R(point), or kNoNode at the top of the chain.
  NodeId image = kNoNode;
  /// Tree nodes mapping onto this one.
  std::vector<NodeId> preimages;
};

struct TreeOptions {
  /// Chordal distance kept from critical points, periodic points and other
  /// nodes of the same fiber.
  double generic_tol = 1e-6;
  int retry_cap = 64;
  std::size_t max_nodes = 10000;
  /// Radius of the disk (in the chart around the hint) where replacement
  /// bases are drawn.
  double jitter = 0.25;
};

/// Finite piece of the grand orbit of a generic base point: a forward chain
/// of length m_max above the base and the complete backward fan of depth
/// k_max below it. Node ids: the base is 0, backward levels follow in
/// breadth-first order, forward images come last.
class OrbitTree {
public:
  const RationalMap& map() const noexcept { return map_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId base() const noexcept { return 0; }
  int forward_depth() const noexcept { return m_max_; }
  int backward_depth() const noexcept { return k_max_; }
  /// Nodes whose every preimage is in the tree: the base and backward
  /// levels above -k_max.
  bool has_full_fiber(NodeId id) const {
    const int h = node(id).height;
    return h <= 0 && h > -k_max_;
  }
  /// R^n(x) inside the tree, if the chain stays in the tree.
  std::optional<NodeId> image(NodeId x, int n) const;

private:
  friend OrbitTree build_orbit_tree(const RationalMap&, const SpherePoint&, int, int, int,
                                    std::uint64_t, const TreeOptions&);
  OrbitTree(RationalMap map, int m_max, int k_max)
      : map_(std::move(map)), m_max_(m_max), k_max_(k_max) {}

  RationalMap map_;
  int m_max_ = 0;
  int k_max_ = 0;
  std::vector<TreeNode> nodes_;
};

/// Builds a tree around a base near base_hint that passes the genericity
/// screen (away from critical points and from periodic points of period
/// <= p_max), resampling up to the retry cap. Throws GenericBaseNotFound,
/// SizeCapExceeded when the tree would exceed max_nodes, and DegreeTooLow.
OrbitTree build_orbit_tree(const RationalMap& map, const SpherePoint& base_hint, int m_max,
                           int k_max, int p_max, std::uint64_t seed,
                           const TreeOptions& options = {});

/// Number of nodes of a full tree: (d^(k+1) - 1) / (d - 1) + m, or nullopt
/// past `cap`.
std::optional<std::size_t> tree_node_count(int degree, int m_max, int k_max, std::size_t cap);

}  // namespace cartan

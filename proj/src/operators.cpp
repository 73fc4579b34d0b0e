#include "cartan/operators.hpp"

#include <algorithm>
#include <cmath>

#include "cartan/error.hpp"

namespace cartan {

namespace {

void check_depth(const OrbitTree& tree, int n) {
  const int limit = tree.backward_depth() + tree.forward_depth();
  if (n < 0 || n > limit)
    throw DepthExceeded("iterate depth " + std::to_string(n) + " exceeds tree depth " +
                        std::to_string(limit));
}

void check_size(const OrbitTree& tree, const SampledFunction& f) {
  if (f.size() != tree.size()) throw InvalidArgument("sampled function is not total on the tree");
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> tree_pairs(const OrbitTree& tree, int m, int n) {
  check_depth(tree, m);
  check_depth(tree, n);
  std::map<NodeId, std::vector<NodeId>> by_image;
  for (NodeId y = 0; y < tree.size(); ++y)
    if (const auto t = tree.image(y, n)) by_image[*t].push_back(y);
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId x = 0; x < tree.size(); ++x) {
    const auto t = tree.image(x, m);
    if (!t) continue;
    const auto it = by_image.find(*t);
    if (it == by_image.end()) continue;
    for (NodeId y : it->second) out.emplace_back(x, y);
  }
  return out;
}

TreeMatrix rho_n(const OrbitTree& tree, const SampledFunction& f, int n) {
  check_depth(tree, n);
  check_size(tree, f);
  TreeMatrix out(tree.size());
  for (NodeId x = 0; x < tree.size(); ++x)
    if (const auto y = tree.image(x, n)) out.set(x, *y, f[x]);
  return out;
}

TreeMatrix rho_mn(const OrbitTree& tree, const std::function<Complex(NodeId, NodeId)>& h, int m,
                  int n) {
  TreeMatrix out(tree.size());
  for (const auto& [x, y] : tree_pairs(tree, m, n)) out.set(x, y, h(x, y));
  return out;
}

SampledFunction pullback(const OrbitTree& tree, const SampledFunction& g, int m) {
  check_depth(tree, m);
  check_size(tree, g);
  SampledFunction out(tree.size());
  for (NodeId x = 0; x < tree.size(); ++x)
    if (const auto y = tree.image(x, m)) out[x] = g[*y];
  return out;
}

SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g) {
  if (f.size() != g.size()) throw InvalidArgument("sampled functions differ in size");
  SampledFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
  return out;
}

std::map<NodeId, Complex> entry_function(const OrbitTree& tree, const TreeMatrix& mat, int m) {
  check_depth(tree, m);
  std::map<NodeId, Complex> out;
  for (NodeId x = 0; x < tree.size(); ++x)
    if (const auto y = tree.image(x, m)) out.emplace(x, mat.at(x, *y));
  return out;
}

Complex kw_inner_product(std::span<const FiberPoint> fiber, std::span<const Complex> f,
                         std::span<const Complex> g) {
  if (f.size() != fiber.size() || g.size() != fiber.size())
    throw InvalidArgument("function samples must match the fiber");
  Complex sum = 0;
  for (std::size_t i = 0; i < fiber.size(); ++i)
    sum += static_cast<double>(fiber[i].branch_index) * std::conj(f[i]) * g[i];
  return sum;
}

SampledFunction kw_inner_product(const OrbitTree& tree, const SampledFunction& f,
                                 const SampledFunction& g) {
  check_size(tree, f);
  check_size(tree, g);
  SampledFunction out(tree.size());
  for (NodeId y = 0; y < tree.size(); ++y) {
    if (!tree.has_full_fiber(y)) continue;
    const auto& pre = tree.node(y).preimages;
    std::vector<FiberPoint> fib;
    std::vector<Complex> fv;
    std::vector<Complex> gv;
    for (NodeId x : pre) {
      fib.push_back({tree.node(x).point, 1});
      fv.push_back(f[x]);
      gv.push_back(g[x]);
    }
    out[y] = kw_inner_product(fib, fv, gv);
  }
  return out;
}

SampledFunction left_action(const SampledFunction& a, const SampledFunction& f) {
  return pointwise_product(a, f);
}

SampledFunction right_action(const OrbitTree& tree, const SampledFunction& f,
                             const SampledFunction& a) {
  return pointwise_product(f, pullback(tree, a, 1));
}

BranchObstruction branch_obstruction(const RationalMap& map, const CriticalDatum& critical,
                                     double radius) {
  const SpherePoint c = critical.point;
  const int e = critical.branch_index;
  const SpherePoint v = map(c);
  const SpherePoint target = v.in_unit_disk() ? SpherePoint::finite(v.z() + radius)
                                              : SpherePoint(1.0, v.w() + radius);

  std::vector<SpherePoint> pre;
  for (const FiberPoint& f : fiber(map, target))
    for (int k = 0; k < f.branch_index; ++k) pre.push_back(f.point);
  std::stable_sort(pre.begin(), pre.end(), [&](const SpherePoint& a, const SpherePoint& b) {
    return chordal_distance(a, c) < chordal_distance(b, c);
  });
  if (pre.size() > static_cast<std::size_t>(e)) pre.erase(pre.begin() + e, pre.end());

  double spread = 0;
  for (const SpherePoint& p : pre) spread = std::max(spread, chordal_distance(p, c));
  const double width = spread > 0 ? 2 * spread : 1.0;

  const auto n = static_cast<NodeId>(pre.size());
  TreeMatrix mat(pre.size() + 1);
  for (NodeId i = 0; i < n; ++i) {
    const double r = chordal_distance(pre[i], c) / width;
    mat.set(i, n, std::exp(-r * r));
  }
  BranchObstruction out{c, e, target, pre, mat, is_quasi_monomial(mat),
                        normalizer_witness(mat)};
  return out;
}

}  // namespace cartan

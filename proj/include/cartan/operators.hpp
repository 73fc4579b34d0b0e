#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cartan/dynamics.hpp"
#include "cartan/orbit_tree.hpp"
#include "cartan/tree_matrix.hpp"

namespace cartan {

/// Values of a function at every node of a tree, indexed by node id.
using SampledFunction = std::vector<Complex>;

/// Pairs (x, y) with R^m(x) = R^n(y) realized inside the tree.
std::vector<std::pair<NodeId, NodeId>> tree_pairs(const OrbitTree& tree, int m, int n);

/// rho_n(f): entry (x, R^n x) = f(x) wherever the tree realizes R^n(x).
/// rho_0 is the diagonal representation of functions and rho_1 the
/// representation of the module. Throws DepthExceeded past k_max + m_max.
TreeMatrix rho_n(const OrbitTree& tree, const SampledFunction& f, int n);

/// rho_{m,n}(h): entry (x, y) = h(x, y) on the tree pairs for (m, n).
TreeMatrix rho_mn(const OrbitTree& tree, const std::function<Complex(NodeId, NodeId)>& h, int m,
                  int n);

/// g o R^m, zero where the tree does not realize R^m.
SampledFunction pullback(const OrbitTree& tree, const SampledFunction& g, int m);
SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g);

/// Entries of mat along (x, R^m x), keyed by x.
std::map<NodeId, Complex> entry_function(const OrbitTree& tree, const TreeMatrix& mat, int m);

/// sum over the fiber of e(x) conj(f(x)) g(x), with f and g given at the
/// fiber points in order.
Complex kw_inner_product(std::span<const FiberPoint> fiber, std::span<const Complex> f,
                         std::span<const Complex> g);

/// <f, g>(y) at every node whose fiber lies entirely in the tree (zero
/// elsewhere); tree nodes are off-critical, so every branch index is 1.
SampledFunction kw_inner_product(const OrbitTree& tree, const SampledFunction& f,
                                 const SampledFunction& g);

/// Left action a.f = a f and right action f.a = f (a o R) on module elements.
SampledFunction left_action(const SampledFunction& a, const SampledFunction& f);
SampledFunction right_action(const OrbitTree& tree, const SampledFunction& f,
                             const SampledFunction& a);

/// Local picture at a critical point c of local degree e: the e preimages
/// of a point w near R(c) that lie closest to c, and the module element
/// supported near c mapped onto them. Its matrix has e entries in one column,
/// so it is not quasi-monomial and normalizer_witness produces a conjugate
/// off the diagonal.
struct BranchObstruction {
  SpherePoint critical;
  int branch_index = 2;
  SpherePoint target;
  std::vector<SpherePoint> local_preimages;
  TreeMatrix matrix;
  bool quasi_monomial = true;
  NormalizerResult normalizer;
};

BranchObstruction branch_obstruction(const RationalMap& map, const CriticalDatum& critical,
                                     double radius = 1e-6);

}  // namespace cartan

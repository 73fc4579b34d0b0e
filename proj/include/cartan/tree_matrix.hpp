#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cartan/polynomial.hpp"

namespace cartan {

using NodeId = std::uint32_t;
using Relation = std::set<std::pair<NodeId, NodeId>>;

/// Square sparse complex matrix indexed by tree node ids. Only nonzero
/// entries are stored, so the support relation is exactly the key set.
class TreeMatrix {
public:
  using Row = std::map<NodeId, Complex>;

  explicit TreeMatrix(std::size_t dim = 0) : rows_(dim) {}
  static TreeMatrix identity(std::size_t dim);
  static TreeMatrix diagonal(std::span<const Complex> values);
  static TreeMatrix from_dense(const std::vector<std::vector<Complex>>& rows);

  std::size_t dim() const noexcept { return rows_.size(); }
  Complex at(NodeId row, NodeId col) const;
  /// Stores v at (row, col), erasing the entry when v is exactly zero.
  void set(NodeId row, NodeId col, Complex v);
  const Row& row(NodeId r) const { return rows_.at(r); }
  std::size_t nnz() const noexcept;
  bool is_zero() const noexcept { return nnz() == 0; }

  /// Calls fn(row, col, value) over stored entries in row-major order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) fn(static_cast<NodeId>(r), c, v);
  }

  TreeMatrix adjoint() const;
  double max_abs() const noexcept;
  std::vector<std::vector<Complex>> to_dense() const;

  TreeMatrix& operator+=(const TreeMatrix& rhs);
  TreeMatrix& operator-=(const TreeMatrix& rhs);
  TreeMatrix& operator*=(Complex s);
  friend TreeMatrix operator+(TreeMatrix a, const TreeMatrix& b) { return a += b; }
  friend TreeMatrix operator-(TreeMatrix a, const TreeMatrix& b) { return a -= b; }
  friend TreeMatrix operator*(TreeMatrix a, Complex s) { return a *= s; }
  friend TreeMatrix operator*(Complex s, TreeMatrix a) { return a *= s; }
  friend TreeMatrix operator*(const TreeMatrix& a, const TreeMatrix& b);
  friend bool operator==(const TreeMatrix&, const TreeMatrix&) = default;

private:
  std::vector<Row> rows_;
};

/// Largest entrywise difference; dimensions must agree.
double max_abs_difference(const TreeMatrix& a, const TreeMatrix& b);

/// Spectral norm, computed blockwise over the connected components of the
/// bipartite row/column support graph.
double operator_norm(const TreeMatrix& m);

Relation rel(const TreeMatrix& m);
Relation compose(const Relation& r, const Relation& s);
Relation inverse(const Relation& r);
bool is_subset(const Relation& r, const Relation& s);

bool is_diagonal(const TreeMatrix& m);
/// True when the support relation is one-to-one: at most one entry in each
/// row and in each column.
bool is_quasi_monomial(const TreeMatrix& m);

/// Keeps the diagonal, drops everything else.
TreeMatrix delta(const TreeMatrix& m);

/// A diagonal partner that fails to commute with a non-diagonal matrix:
/// b is the indicator of the row x of an off-diagonal entry (x, z).
struct CommutationWitness {
  NodeId x;
  NodeId z;
  std::vector<Complex> b;
};
std::optional<CommutationWitness> maximal_abelian_witness(const TreeMatrix& m);

/// Either the matrix normalizes the diagonal (every indicator conjugate
/// stays diagonal), or an indicator h and a side on which conjugation
/// leaves the diagonal.
struct ConjugationStaysDiagonal {};
struct NormalizerWitness {
  /// h = indicator of u. AdjointFirst: a* diag(h) a has a nonzero (v, w)
  /// entry; AdjointLast: a diag(h) a* does.
  enum class Side { AdjointFirst, AdjointLast };
  Side side;
  NodeId u;
  NodeId v;
  NodeId w;
  std::vector<Complex> h;
  TreeMatrix conjugate;
};
using NormalizerResult = std::variant<ConjugationStaysDiagonal, NormalizerWitness>;

/// Throws InternalInvariantBroken if a quasi-monomial matrix produces a
/// non-diagonal conjugate.
NormalizerResult normalizer_witness(const TreeMatrix& m);

}  // namespace cartan

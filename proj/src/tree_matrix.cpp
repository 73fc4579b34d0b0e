#include "cartan/tree_matrix.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "cartan/error.hpp"

namespace cartan {

TreeMatrix TreeMatrix::identity(std::size_t dim) {
  TreeMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.rows_[i].emplace(static_cast<NodeId>(i), 1.0);
  return m;
}

TreeMatrix TreeMatrix::diagonal(std::span<const Complex> values) {
  TreeMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    m.set(static_cast<NodeId>(i), static_cast<NodeId>(i), values[i]);
  return m;
}

TreeMatrix TreeMatrix::from_dense(const std::vector<std::vector<Complex>>& rows) {
  TreeMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw InvalidArgument("tree matrices are square");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m.set(static_cast<NodeId>(r), static_cast<NodeId>(c), rows[r][c]);
  }
  return m;
}

Complex TreeMatrix::at(NodeId row, NodeId col) const {
  const Row& r = rows_.at(row);
  const auto it = r.find(col);
  return it == r.end() ? Complex{} : it->second;
}

void TreeMatrix::set(NodeId row, NodeId col, Complex v) {
  if (row >= dim() || col >= dim()) throw InvalidArgument("tree matrix index out of range");
  if (v == Complex{})
    rows_[row].erase(col);
  else
    rows_[row][col] = v;
}

std::size_t TreeMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const Row& r : rows_) n += r.size();
  return n;
}

TreeMatrix TreeMatrix::adjoint() const {
  TreeMatrix out(dim());
  for_each([&](NodeId r, NodeId c, Complex v) { out.rows_[c].emplace(r, std::conj(v)); });
  return out;
}

double TreeMatrix::max_abs() const noexcept {
  double m = 0;
  for_each([&](NodeId, NodeId, Complex v) { m = std::max(m, std::abs(v)); });
  return m;
}

std::vector<std::vector<Complex>> TreeMatrix::to_dense() const {
  std::vector<std::vector<Complex>> out(dim(), std::vector<Complex>(dim()));
  for_each([&](NodeId r, NodeId c, Complex v) { out[r][c] = v; });
  return out;
}

TreeMatrix& TreeMatrix::operator+=(const TreeMatrix& rhs) {
  if (rhs.dim() != dim()) throw InvalidArgument("tree matrix dimensions differ");
  rhs.for_each([&](NodeId r, NodeId c, Complex v) { set(r, c, at(r, c) + v); });
  return *this;
}

TreeMatrix& TreeMatrix::operator-=(const TreeMatrix& rhs) {
  if (rhs.dim() != dim()) throw InvalidArgument("tree matrix dimensions differ");
  rhs.for_each([&](NodeId r, NodeId c, Complex v) { set(r, c, at(r, c) - v); });
  return *this;
}

TreeMatrix& TreeMatrix::operator*=(Complex s) {
  if (s == Complex{}) {
    for (Row& r : rows_) r.clear();
    return *this;
  }
  for (Row& r : rows_)
    for (auto it = r.begin(); it != r.end();) {
      it->second *= s;
      it = it->second == Complex{} ? r.erase(it) : std::next(it);
    }
  return *this;
}

TreeMatrix operator*(const TreeMatrix& a, const TreeMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("tree matrix dimensions differ");
  TreeMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    TreeMatrix::Row acc;
    for (const auto& [k, av] : a.rows_[i])
      for (const auto& [j, bv] : b.rows_[k]) acc[j] += av * bv;
    for (auto it = acc.begin(); it != acc.end();)
      it = it->second == Complex{} ? acc.erase(it) : std::next(it);
    out.rows_[i] = std::move(acc);
  }
  return out;
}

double max_abs_difference(const TreeMatrix& a, const TreeMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("tree matrix dimensions differ");
  double m = 0;
  a.for_each([&](NodeId r, NodeId c, Complex v) { m = std::max(m, std::abs(v - b.at(r, c))); });
  b.for_each([&](NodeId r, NodeId c, Complex v) { m = std::max(m, std::abs(v - a.at(r, c))); });
  return m;
}

double operator_norm(const TreeMatrix& m) {
  const std::size_t n = m.dim();
  // Rows are vertices 0..n-1, columns n..2n-1.
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  m.for_each([&](NodeId r, NodeId c, Complex) {
    const std::size_t a = find(r);
    const std::size_t b = find(n + c);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  });

  std::map<std::size_t, std::pair<std::vector<NodeId>, std::vector<NodeId>>> blocks;
  m.for_each([&](NodeId r, NodeId c, Complex) {
    auto& block = blocks[find(r)];
    block.first.push_back(r);
    block.second.push_back(c);
  });

  double norm = 0;
  for (auto& [root, block] : blocks) {
    auto& [rows, cols] = block;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (rows.size() == 1 && cols.size() == 1) {
      norm = std::max(norm, std::abs(m.at(rows[0], cols[0])));
      continue;
    }
    Eigen::MatrixXcd dense(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(rows[i], cols[j]);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
    norm = std::max(norm, svd.singularValues()(0));
  }
  return norm;
}

Relation rel(const TreeMatrix& m) {
  Relation r;
  m.for_each([&](NodeId row, NodeId col, Complex) { r.emplace(row, col); });
  return r;
}

Relation compose(const Relation& r, const Relation& s) {
  std::multimap<NodeId, NodeId> by_source(s.begin(), s.end());
  Relation out;
  for (const auto& [x, y] : r) {
    const auto [lo, hi] = by_source.equal_range(y);
    for (auto it = lo; it != hi; ++it) out.emplace(x, it->second);
  }
  return out;
}

Relation inverse(const Relation& r) {
  Relation out;
  for (const auto& [x, y] : r) out.emplace(y, x);
  return out;
}

bool is_subset(const Relation& r, const Relation& s) {
  return std::includes(s.begin(), s.end(), r.begin(), r.end());
}

bool is_diagonal(const TreeMatrix& m) {
  bool ok = true;
  m.for_each([&](NodeId r, NodeId c, Complex) { ok = ok && r == c; });
  return ok;
}

bool is_quasi_monomial(const TreeMatrix& m) {
  std::vector<int> column_count(m.dim(), 0);
  bool ok = true;
  for (NodeId r = 0; r < m.dim() && ok; ++r) {
    if (m.row(r).size() > 1) ok = false;
    for (const auto& [c, v] : m.row(r))
      if (++column_count[c] > 1) ok = false;
  }
  return ok;
}

TreeMatrix delta(const TreeMatrix& m) {
  TreeMatrix out(m.dim());
  for (NodeId r = 0; r < m.dim(); ++r) out.set(r, r, m.at(r, r));
  return out;
}

std::optional<CommutationWitness> maximal_abelian_witness(const TreeMatrix& m) {
  std::optional<CommutationWitness> w;
  m.for_each([&](NodeId r, NodeId c, Complex) {
    if (w || r == c) return;
    std::vector<Complex> b(m.dim());
    b[r] = 1.0;
    w = CommutationWitness{r, c, std::move(b)};
  });
  return w;
}

namespace {

TreeMatrix indicator(std::size_t dim, NodeId u) {
  TreeMatrix d(dim);
  d.set(u, u, 1.0);
  return d;
}

}  // namespace

NormalizerResult normalizer_witness(const TreeMatrix& m) {
  const TreeMatrix star = m.adjoint();
  if (is_quasi_monomial(m)) {
    for (NodeId u = 0; u < m.dim(); ++u) {
      const TreeMatrix h = indicator(m.dim(), u);
      if (!m.row(u).empty() && !is_diagonal(star * h * m))
        throw InternalInvariantBroken("quasi-monomial conjugate left the diagonal");
      if (!star.row(u).empty() && !is_diagonal(m * h * star))
        throw InternalInvariantBroken("quasi-monomial conjugate left the diagonal");
    }
    return ConjugationStaysDiagonal{};
  }

  auto make = [&](NormalizerWitness::Side side, NodeId u, NodeId v, NodeId w) {
    const TreeMatrix h = indicator(m.dim(), u);
    TreeMatrix conjugate =
        side == NormalizerWitness::Side::AdjointFirst ? star * h * m : m * h * star;
    if (conjugate.at(v, w) == Complex{})
      throw InternalInvariantBroken("normalizer witness entry vanished");
    std::vector<Complex> values(m.dim());
    values[u] = 1.0;
    return NormalizerWitness{side, u, v, w, std::move(values), std::move(conjugate)};
  };
  for (NodeId u = 0; u < m.dim(); ++u) {
    const auto& row = m.row(u);
    if (row.size() > 1)
      return make(NormalizerWitness::Side::AdjointFirst, u, row.begin()->first,
                  std::next(row.begin())->first);
  }
  for (NodeId u = 0; u < star.dim(); ++u) {
    const auto& row = star.row(u);
    if (row.size() > 1)
      return make(NormalizerWitness::Side::AdjointLast, u, row.begin()->first,
                  std::next(row.begin())->first);
  }
  throw InternalInvariantBroken("matrix is neither quasi-monomial nor branching");
}

}  // namespace cartan

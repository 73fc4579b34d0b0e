#include "cartan/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>

#include "cartan/operators.hpp"

namespace cartan {

namespace {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  bool chance(double p) { return uniform() < p; }
  Complex complex() { return {2 * uniform() - 1, 2 * uniform() - 1}; }
  /// Nonzero with both parts bounded away from zero in modulus.
  Complex nonzero() { return std::polar(0.25 + uniform(), 6.283185307179586 * uniform()); }

private:
  std::mt19937_64 engine_;
};

class Recorder {
public:
  explicit Recorder(std::string name) { check_.name = std::move(name); }
  void expect(bool ok, const std::string& what) {
    if (!ok && check_.passed) {
      check_.passed = false;
      check_.detail = "case " + std::to_string(check_.cases) + ": " + what;
    }
  }
  void next_case() { ++check_.cases; }
  SuiteCheck finish(std::string summary = {}) {
    if (check_.passed) check_.detail = std::move(summary);
    return std::move(check_);
  }

private:
  SuiteCheck check_;
};

SampledFunction random_function(std::size_t n, Rng& rng, double zero_chance = 0.1) {
  SampledFunction f(n);
  for (Complex& v : f) v = rng.chance(zero_chance) ? Complex{} : rng.complex();
  return f;
}

SampledFunction nonvanishing_function(std::size_t n, Rng& rng) {
  SampledFunction f(n);
  for (Complex& v : f) v = rng.nonzero();
  return f;
}

TreeMatrix random_sparse(std::size_t dim, Rng& rng, std::size_t entries) {
  TreeMatrix m(dim);
  const int n = static_cast<int>(dim);
  for (std::size_t i = 0; i < entries; ++i)
    m.set(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)), rng.complex());
  return m;
}

TreeMatrix random_quasi_monomial(std::size_t dim, Rng& rng) {
  std::vector<NodeId> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = static_cast<NodeId>(i);
  for (std::size_t i = dim; i > 1; --i)
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
  TreeMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    if (rng.chance(0.7)) m.set(static_cast<NodeId>(i), perm[i], rng.nonzero() * (1 + 3 * rng.uniform()));
  return m;
}

// Largest depth usable for random generators on this tree.
int max_shift(const OrbitTree& tree) { return std::min(tree.backward_depth(), 3); }

struct Word {
  TreeMatrix matrix;
  int shift = 0;
};

// Product of 1..4 generators rho_n(f) or rho_n(f)*, tracking the net height
// shift. Half the time the word is a product of balanced factors
// rho_a(f)* rho_a(g), so that diagonal words actually occur.
Word random_word(const OrbitTree& tree, Rng& rng) {
  const int k = max_shift(tree);
  Word w{TreeMatrix::identity(tree.size()), 0};
  if (rng.chance(0.5)) {
    const int factors = 1 + rng.below(2);
    for (int i = 0; i < factors; ++i) {
      const int a = rng.below(k + 1);
      w.matrix = w.matrix * rho_n(tree, random_function(tree.size(), rng), a).adjoint() *
                 rho_n(tree, random_function(tree.size(), rng), a);
    }
    return w;
  }
  const int length = 1 + rng.below(4);
  for (int i = 0; i < length; ++i) {
    const int n = rng.below(k + 1);
    const TreeMatrix g = rho_n(tree, random_function(tree.size(), rng), n);
    if (rng.chance(0.5)) {
      w.matrix = w.matrix * g.adjoint();
      w.shift -= n;
    } else {
      w.matrix = w.matrix * g;
      w.shift += n;
    }
  }
  return w;
}

SuiteCheck relation_calculus(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("relation calculus");
  const std::size_t dim = tree.size();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    TreeMatrix a = s % 2 ? random_word(tree, rng).matrix : random_sparse(dim, rng, 3 * dim);
    TreeMatrix b = random_sparse(dim, rng, 3 * dim);
    // Force cancellation on part of the support.
    a.for_each([&](NodeId x, NodeId y, Complex v) {
      if (rng.chance(0.3)) b.set(x, y, -v);
    });
    const Relation ra = rel(a);
    const Relation rb = rel(b);
    Relation un = ra;
    un.insert(rb.begin(), rb.end());
    r.expect(is_subset(rel(a + b), un), "rel(a+b) not within rel(a) union rel(b)");
    const Complex c = rng.complex();
    r.expect(is_subset(rel(a * c), ra), "rel(ac) not within rel(a)");
    const TreeMatrix d = TreeMatrix::diagonal(random_function(dim, rng, 0.3));
    r.expect(is_subset(rel(a * d), ra), "rel(a diag) not within rel(a)");
    r.expect(is_subset(rel(a * b), compose(ra, rb)), "rel(ab) not within rel(a) o rel(b)");
    r.expect(rel(a.adjoint()) == inverse(ra), "rel(a*) differs from rel(a) inverse");
  }
  return r.finish("support relations behave under sums, scalars, products and adjoints");
}

SuiteCheck conditional_expectation(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("conditional expectation");
  const std::size_t dim = tree.size();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const TreeMatrix a = random_sparse(dim, rng, 3 * dim);
    const TreeMatrix b = random_word(tree, rng).matrix;
    const Complex c = rng.complex();
    r.expect(delta(delta(a)) == delta(a), "delta is not idempotent");
    r.expect(max_abs_difference(delta(a + b * c), delta(a) + delta(b) * c) <= opt.tol,
             "delta is not linear");
    const TreeMatrix d = TreeMatrix::diagonal(random_function(dim, rng));
    r.expect(delta(d) == d, "delta moves a diagonal matrix");
    r.expect(max_abs_difference(delta(a * d), delta(a) * d) <= opt.tol,
             "delta(a d) differs from delta(a) d");
    r.expect(max_abs_difference(delta(d * a), d * delta(a)) <= opt.tol,
             "delta(d a) differs from d delta(a)");

    const TreeMatrix g = random_sparse(dim, rng, dim);
    const TreeMatrix positive = g.adjoint() * g;
    const TreeMatrix dp = delta(positive);
    bool nonnegative = true;
    for (NodeId x = 0; x < dim; ++x) {
      const Complex v = dp.at(x, x);
      if (v.real() < -opt.tol || std::abs(v.imag()) > opt.tol * (1 + std::abs(v))) nonnegative = false;
    }
    r.expect(nonnegative, "delta of a positive matrix has a negative diagonal entry");
    r.expect(positive.is_zero() || !dp.is_zero(), "delta kills a nonzero positive matrix");

    // A Hermitian matrix with zero diagonal and an entry c at (x, y) takes
    // the value -2|c|^3 on v = c e_x - |c| e_y, so it is not positive.
    TreeMatrix h(dim);
    const auto x = static_cast<NodeId>(rng.below(static_cast<int>(dim)));
    auto y = static_cast<NodeId>(rng.below(static_cast<int>(dim) - 1));
    if (y >= x) ++y;
    const Complex entry = rng.nonzero();
    h.set(x, y, entry);
    h.set(y, x, std::conj(entry));
    const TreeMatrix extra = random_sparse(dim, rng, dim);
    extra.for_each([&](NodeId i, NodeId j, Complex v) {
      if (i == j || i == x || i == y || j == x || j == y) return;
      h.set(i, j, v);
      h.set(j, i, std::conj(v));
    });
    std::vector<Complex> vec(dim);
    vec[x] = entry;
    vec[y] = -std::abs(entry);
    Complex form = 0;
    h.for_each([&](NodeId i, NodeId j, Complex v) { form += std::conj(vec[i]) * v * vec[j]; });
    const double expected = -2 * std::pow(std::abs(entry), 3);
    r.expect(delta(h).is_zero() && std::abs(form - expected) <= opt.tol * 10,
             "zero-diagonal Hermitian test vector does not give -2|c|^3");
  }
  return r.finish("idempotent, linear, bimodule map, positive and faithful");
}

SuiteCheck composition_law(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("composition law");
  const int k = tree.backward_depth();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const int m = rng.below(k + 1);
    const int n = rng.below(k - m + 1);
    const SampledFunction f = random_function(tree.size(), rng);
    const SampledFunction g = random_function(tree.size(), rng);
    const TreeMatrix lhs = rho_n(tree, f, m) * rho_n(tree, g, n);
    const TreeMatrix rhs = rho_n(tree, pointwise_product(f, pullback(tree, g, m)), m + n);
    r.expect(max_abs_difference(lhs, rhs) <= opt.tol,
             "rho_m(f) rho_n(g) differs from rho_{m+n}(f (g o R^m)) for m=" +
                 std::to_string(m) + ", n=" + std::to_string(n));
  }
  return r.finish("rho_m(f) rho_n(g) = rho_{m+n}(f (g o R^m))");
}

SuiteCheck adjoint_law(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("adjoint law");
  const int k = tree.backward_depth();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const int m = rng.below(k + 1);
    const int n = rng.below(k + 1);
    const SampledFunction f = random_function(tree.size(), rng);
    const SampledFunction g = random_function(tree.size(), rng);
    const TreeMatrix lhs = rho_n(tree, f, m) * rho_n(tree, g, n).adjoint();
    const TreeMatrix rhs =
        rho_mn(tree, [&](NodeId x, NodeId y) { return f[x] * std::conj(g[y]); }, m, n);
    r.expect(max_abs_difference(lhs, rhs) <= opt.tol,
             "rho_m(f) rho_n(g)* differs from rho_{m,n}(f x conj g) for m=" + std::to_string(m) +
                 ", n=" + std::to_string(n));
  }
  return r.finish("rho_m(f) rho_n(g)* = rho_{m,n}(f(x) conj g(y))");
}

SuiteCheck support_structure(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("support disjointness and nesting");
  const int k = max_shift(tree);
  using PairSet = std::set<std::pair<NodeId, NodeId>>;
  std::map<std::pair<int, int>, PairSet> sets;
  for (int m = 0; m <= k; ++m)
    for (int n = 0; n <= k; ++n) {
      const auto pairs = tree_pairs(tree, m, n);
      sets[{m, n}] = PairSet(pairs.begin(), pairs.end());
    }
  for (const auto& [mn, s1] : sets) {
    for (const auto& [jk, s2] : sets) {
      r.next_case();
      const auto [m, n] = mn;
      const auto [j, kk] = jk;
      if (m - n != j - kk) {
        PairSet both;
        std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                              std::inserter(both, both.begin()));
        r.expect(both.empty(), "supports for (" + std::to_string(m) + "," + std::to_string(n) +
                                   ") and (" + std::to_string(j) + "," + std::to_string(kk) +
                                   ") meet");
      } else if (m <= j) {
        for (const auto& [x, y] : s1) {
          if (!tree.image(x, j) || !tree.image(y, kk)) continue;
          r.expect(s2.count({x, y}) == 1, "support for (" + std::to_string(m) + "," +
                                              std::to_string(n) + ") not nested in (" +
                                              std::to_string(j) + "," + std::to_string(kk) + ")");
        }
      }
    }
  }
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const int m = rng.below(k + 1);
    const int n = rng.below(k + 1);
    const SampledFunction u = nonvanishing_function(tree.size(), rng);
    const TreeMatrix mat = rho_mn(tree, [&](NodeId x, NodeId y) { return u[x] * u[y]; }, m, n);
    r.expect(rel(mat) == sets[{m, n}], "rho_{m,n} of a nonvanishing kernel misses its support");
  }
  return r.finish("supports with different shifts are disjoint; equal shifts nest");
}

SuiteCheck diagonal_words(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("diagonal words");
  std::size_t diagonal_seen = 0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const Word w = random_word(tree, rng);
    bool heights_ok = true;
    w.matrix.for_each([&](NodeId x, NodeId y, Complex) {
      if (tree.node(y).height - tree.node(x).height != w.shift) heights_ok = false;
    });
    r.expect(heights_ok, "word entry does not shift height by the word's net shift");
    if (w.shift != 0) r.expect(delta(w.matrix).is_zero(), "shifted word has diagonal entries");
    if (is_diagonal(w.matrix)) {
      ++diagonal_seen;
      SampledFunction diag(tree.size());
      for (NodeId x = 0; x < tree.size(); ++x) diag[x] = w.matrix.at(x, x);
      r.expect(rho_n(tree, diag, 0) == w.matrix, "diagonal word is not rho_0 of its diagonal");
    }
  }
  r.expect(diagonal_seen > 0, "no diagonal words were generated");
  return r.finish(std::to_string(diagonal_seen) +
                  " diagonal words, each rho_0 of its diagonal; shifted words have zero diagonal");
}

SuiteCheck commutation_witness(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("commutation witness");
  const std::size_t dim = tree.size();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const TreeMatrix a = s % 2 ? random_word(tree, rng).matrix : random_sparse(dim, rng, 2 * dim);
    const auto w = maximal_abelian_witness(a);
    if (is_diagonal(a)) {
      r.expect(!w.has_value(), "witness produced for a diagonal matrix");
      const TreeMatrix d = TreeMatrix::diagonal(random_function(dim, rng));
      r.expect(max_abs_difference(a * d, d * a) <= opt.tol, "diagonal matrices fail to commute");
      continue;
    }
    r.expect(w.has_value(), "no witness for a non-diagonal matrix");
    if (!w) continue;
    r.expect(w->b[w->x] != w->b[w->z], "witness function does not separate x and z");
    const TreeMatrix b = TreeMatrix::diagonal(w->b);
    r.expect((a * b - b * a).at(w->x, w->z) != Complex{}, "witness commutes with the matrix");
  }
  return r.finish("every non-diagonal matrix has a non-commuting diagonal indicator");
}

SuiteCheck normalizer_characterization(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("normalizer characterization");
  const std::size_t dim = tree.size();
  std::size_t witnesses = 0;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    TreeMatrix a(dim);
    switch (s % 3) {
      case 0:
        a = random_quasi_monomial(dim, rng);
        break;
      case 1: {
        // rho_n(f) with f supported on one point of each R^n fiber is
        // quasi-monomial; on the whole tree it is not.
        const int n = 1 + rng.below(max_shift(tree));
        SampledFunction f = nonvanishing_function(dim, rng);
        if (rng.chance(0.5)) {
          std::set<NodeId> hit;
          for (NodeId x = 0; x < dim; ++x) {
            const auto y = tree.image(x, n);
            if (y && !hit.insert(*y).second) f[x] = 0;
          }
        }
        a = rho_n(tree, f, n);
        if (rng.chance(0.5)) a = a.adjoint();
        break;
      }
      default:
        a = random_sparse(dim, rng, dim);
        break;
    }
    const NormalizerResult result = normalizer_witness(a);
    if (is_quasi_monomial(a)) {
      r.expect(std::holds_alternative<ConjugationStaysDiagonal>(result),
               "quasi-monomial matrix reported as leaving the diagonal");
      continue;
    }
    r.expect(std::holds_alternative<NormalizerWitness>(result),
             "non-quasi-monomial matrix reported as normalizing");
    if (const auto* w = std::get_if<NormalizerWitness>(&result)) {
      ++witnesses;
      r.expect(w->v != w->w && w->conjugate.at(w->v, w->w) != Complex{} &&
                   !is_diagonal(w->conjugate),
               "witness conjugate is diagonal");
    }
  }
  return r.finish("quasi-monomial matrices normalize the diagonal; " + std::to_string(witnesses) +
                  " others produced explicit witnesses");
}

SuiteCheck module_structure(const OrbitTree& tree, const SuiteOptions& opt, Rng& rng) {
  Recorder r("module inner product and actions");
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const SampledFunction f = random_function(tree.size(), rng);
    const SampledFunction g = random_function(tree.size(), rng);
    const SampledFunction a = random_function(tree.size(), rng);
    const TreeMatrix gram = rho_n(tree, f, 1).adjoint() * rho_n(tree, g, 1);
    const SampledFunction inner = kw_inner_product(tree, f, g);
    r.expect(is_diagonal(gram), "rho_1(f)* rho_1(g) is not diagonal");
    for (NodeId y = 0; y < tree.size(); ++y)
      if (tree.has_full_fiber(y))
        r.expect(std::abs(gram.at(y, y) - inner[y]) <= opt.tol,
                 "rho_1(f)* rho_1(g) differs from the inner product at a full fiber");
    r.expect(max_abs_difference(rho_n(tree, left_action(a, f), 1),
                                rho_n(tree, a, 0) * rho_n(tree, f, 1)) <= opt.tol,
             "left action is not rho_0(a) rho_1(f)");
    r.expect(max_abs_difference(rho_n(tree, right_action(tree, f, a), 1),
                                rho_n(tree, f, 1) * rho_n(tree, a, 0)) <= opt.tol,
             "right action is not rho_1(f) rho_0(a)");
  }
  return r.finish("rho_1(f)* rho_1(g) = rho_0(<f,g>); actions match rho_0 products");
}

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

SuiteCheck check_quasi_monomial_norms(std::size_t dim, const SuiteOptions& opt) {
  Recorder r("quasi-monomial norm");
  Rng rng(opt.seed ^ 0x51ULL);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const TreeMatrix a = random_quasi_monomial(dim, rng);
    r.expect(std::abs(operator_norm(a) - a.max_abs()) <= opt.norm_tol,
             "norm differs from the largest entry");
  }
  return r.finish("operator norm equals the largest entry modulus");
}

SuiteCheck check_fiber_block_norms(const OrbitTree& tree, const SuiteOptions& opt) {
  Recorder r("fiber-block norm bound");
  Rng rng(opt.seed ^ 0xB10CULL);
  const int k = max_shift(tree);
  const double d = tree.map().degree();
  for (std::size_t s = 0; s < opt.samples; ++s) {
    r.next_case();
    const int m = rng.below(k + 1);
    const int n = rng.below(k + 1);
    const SampledFunction u = random_function(tree.size(), rng, 0);
    const TreeMatrix a = rho_mn(tree, [&](NodeId x, NodeId y) { return u[x] * std::conj(u[y]); }, m, n);
    const double width = std::max(std::pow(d, m), std::pow(d, n));
    const double norm = operator_norm(a);
    const double top = a.max_abs();
    r.expect(norm <= width * top * (1 + opt.norm_tol) + opt.norm_tol,
             "norm exceeds width times the largest entry");
    r.expect(norm >= top * (1 - opt.norm_tol) - opt.norm_tol, "norm below the largest entry");
  }
  return r.finish("max|h| <= norm <= max(d^m, d^n) max|h|");
}

SuiteReport run_identity_suite(const OrbitTree& tree, const SuiteOptions& opt) {
  SuiteReport report;
  Rng rng(opt.seed);
  report.checks.push_back(relation_calculus(tree, opt, rng));
  report.checks.push_back(conditional_expectation(tree, opt, rng));
  report.checks.push_back(composition_law(tree, opt, rng));
  report.checks.push_back(adjoint_law(tree, opt, rng));
  report.checks.push_back(support_structure(tree, opt, rng));
  report.checks.push_back(diagonal_words(tree, opt, rng));
  report.checks.push_back(commutation_witness(tree, opt, rng));
  report.checks.push_back(normalizer_characterization(tree, opt, rng));
  report.checks.push_back(module_structure(tree, opt, rng));
  report.checks.push_back(check_quasi_monomial_norms(tree.size(), opt));
  report.checks.push_back(check_fiber_block_norms(tree, opt));
  return report;
}

}  // namespace cartan

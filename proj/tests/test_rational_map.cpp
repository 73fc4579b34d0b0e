#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cartan/error.hpp"
#include "cartan/exact.hpp"
#include "cartan/parse.hpp"
#include "support.hpp"

using namespace cartan;
using namespace cartan::testing;

namespace {

const RationalMap kSquare = RationalMap::polynomial({0.0, 0.0, 1.0});
const RationalMap kChebyshev = RationalMap::polynomial({-2.0, 0.0, 1.0});

Complex value(const RationalMap& map, Complex z) { return map(SpherePoint::finite(z)).to_complex(); }

// n-th iterate in exact Gaussian-rational arithmetic, expanded homogeneously
// so that no cancellation step is involved.
RationalMap exact_iterate(const RationalMap& map, int n) {
  using exact::ExactPolynomial;
  const int d = map.degree();
  const auto p = ExactPolynomial::from_polynomial(map.numerator());
  const auto q = ExactPolynomial::from_polynomial(map.denominator());
  ExactPolynomial a = ExactPolynomial::variable();
  ExactPolynomial b = ExactPolynomial::constant(exact::GaussianRational(1));
  for (int k = 0; k < n; ++k) {
    ExactPolynomial na;
    ExactPolynomial nb;
    for (int i = 0; i <= d; ++i) {
      const ExactPolynomial term = a.pow(i) * b.pow(d - i);
      if (i <= p.degree()) {
        ExactPolynomial t = term;
        t *= p.coeffs()[static_cast<std::size_t>(i)];
        na += t;
      }
      if (i <= q.degree()) {
        ExactPolynomial t = term;
        t *= q.coeffs()[static_cast<std::size_t>(i)];
        nb += t;
      }
    }
    a = std::move(na);
    b = std::move(nb);
  }
  return RationalMap::from_coprime(a.to_polynomial(), b.to_polynomial());
}

// Chordal error bound for evaluating the map at x in x's chart:
// 2 (deg + 1) eps (sum |p_i||u|^i + sum |q_i||u|^i) / |(P(u), Q(u))|.
double horner_error_bound(const RationalMap& map, const SpherePoint& x) {
  const bool disk = x.in_unit_disk();
  const Complex u = x.chart_coordinate();
  auto absolute = [&](const Polynomial& poly) {
    double s = 0;
    double power = 1;
    for (const Complex& c : poly.coeffs()) {
      s += std::abs(c) * power;
      power *= std::abs(u);
    }
    return s;
  };
  const Polynomial& p = map.chart_numerator(disk);
  const Polynomial& q = map.chart_denominator(disk);
  const double size = std::hypot(std::abs(p(u)), std::abs(q(u)));
  return 2.0 * (map.degree() + 1) * std::numeric_limits<double>::epsilon() *
         (absolute(p) + absolute(q)) / size;
}

}  // namespace

TEST(SpherePoint, NormalizesLargerCoordinateToOne) {
  const SpherePoint p(Complex(4.0), Complex(2.0));
  EXPECT_EQ(p.z(), Complex(1.0));
  EXPECT_EQ(p.w(), Complex(0.5));
  EXPECT_EQ(p.to_complex(), Complex(2.0));
  EXPECT_FALSE(p.in_unit_disk());
  EXPECT_THROW(SpherePoint(0.0, 0.0), InvalidArgument);
  EXPECT_THROW(SpherePoint(std::nan(""), 1.0), InvalidArgument);
}

TEST(SpherePoint, ProjectiveEquality) {
  const SpherePoint a(Complex(1, 1), Complex(2, 0));
  const SpherePoint b(Complex(3, 3), Complex(6, 0));
  EXPECT_TRUE(a.projectively_equal(b));
  EXPECT_TRUE(SpherePoint::infinity().projectively_equal(SpherePoint(5.0, 0.0)));
  EXPECT_FALSE(a.projectively_equal(SpherePoint::infinity()));
}

TEST(SpherePoint, ChordalDistanceOracle) {
  // sphere of diameter one: |a-b| / sqrt((1+|a|^2)(1+|b|^2)), and
  // 1/sqrt(1+|a|^2) to infinity
  const Complex a{0.3, -1.2};
  const Complex b{2.0, 0.5};
  const double expected = std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b)));
  EXPECT_NEAR(chordal_distance(SpherePoint::finite(a), SpherePoint::finite(b)), expected, 1e-14);
  EXPECT_NEAR(chordal_distance(SpherePoint::finite(a), SpherePoint::infinity()),
              1 / std::sqrt(1 + std::norm(a)), 1e-14);
  EXPECT_NEAR(chordal_distance(SpherePoint::finite(0.0), SpherePoint::infinity()), 1.0, 1e-15);
  EXPECT_NEAR(chordal_distance(SpherePoint::finite(1.0), SpherePoint::finite(-1.0)), 1.0, 1e-15);
}

TEST(RationalMap, DegreeIsMaxOfNumeratorAndDenominator) {
  const RationalMap m(Polynomial{1.0, 0.0, 1.0}, Polynomial{0.0, 2.0});
  EXPECT_EQ(m.degree(), 2);
  EXPECT_FALSE(m.is_polynomial());
  EXPECT_THROW(RationalMap(Polynomial{1.0}, Polynomial{}), InvalidArgument);
}

TEST(RationalMap, ConstructorCancelsCommonFactors) {
  // (z^2 - 1)/(z - 1) = z + 1
  const RationalMap m(Polynomial{-1.0, 0.0, 1.0}, Polynomial{-1.0, 1.0});
  EXPECT_EQ(m.degree(), 1);
  EXPECT_TRUE(m.is_polynomial());
  // irrational common root goes through the numeric path
  const Complex r{0.1234567, 0.7654321};
  const Polynomial shared{-r, 1.0};
  const RationalMap n(shared * Polynomial{0.3, 0.0, 1.0}, shared * Polynomial{1.7, 1.0});
  EXPECT_EQ(n.degree(), 2);
}

TEST(RationalMap, EvalExamples) {
  EXPECT_TRUE(kSquare(SpherePoint::finite(2.0)).projectively_equal(SpherePoint::finite(4.0)));
  EXPECT_TRUE(kSquare(SpherePoint::infinity()).is_infinity());
  EXPECT_EQ(kChebyshev(SpherePoint::finite(0.0)).to_complex(), Complex(-2.0));
  const RationalMap inv(Polynomial{1.0}, Polynomial{0.0, 1.0});
  EXPECT_TRUE(inv(SpherePoint::finite(0.0)).is_infinity());
  EXPECT_EQ(inv(SpherePoint::infinity()).to_complex(), Complex(0.0));
}

TEST(RationalMap, DerivativeExamples) {
  EXPECT_TRUE(derivative(kSquare).projectively_equal(RationalMap::polynomial({0.0, 2.0})));
  EXPECT_TRUE(derivative(kChebyshev).projectively_equal(RationalMap::polynomial({0.0, 2.0})));
  const RationalMap inv(Polynomial{1.0}, Polynomial{0.0, 1.0});
  EXPECT_TRUE(derivative(inv).projectively_equal(
      RationalMap(Polynomial{-1.0}, Polynomial{0.0, 0.0, 1.0})));
}

TEST(RationalMap, IterateExamples) {
  EXPECT_TRUE(iterate(kSquare, 3).projectively_equal(
      RationalMap::polynomial(Polynomial::monomial(1.0, 8))));
  EXPECT_TRUE(iterate(kChebyshev, 0).projectively_equal(RationalMap::identity()));
  EXPECT_EQ(iterate(kSquare, 5).degree(), 32);
}

TEST(RationalMap, IterateOfChebyshevMatchesHandExpansion) {
  // (z^2 - 2)^2 - 2 expanded with the independent schoolbook product.
  const std::vector<Complex> p{-2.0, 0.0, 1.0};
  const auto expected = naive_add(naive_mul(p, p), {-2.0});
  const RationalMap it = iterate(kChebyshev, 2);
  ASSERT_TRUE(it.is_polynomial());
  const Complex scale = it.denominator().coeff(0);
  std::vector<Complex> got = coeff_vector(it.numerator());
  for (auto& c : got) c /= scale;
  EXPECT_LT(coeff_distance(got, expected), 1e-14);
  EXPECT_LT(coeff_distance(expected, {2.0, 0.0, -4.0, 0.0, 1.0}), 1e-15);
}

TEST(RationalMap, IterateRejectsOversizedDegree) {
  EXPECT_THROW(iterate(kSquare, 13), SizeCapExceeded);
  EXPECT_THROW(iterate(kSquare, -1), InvalidArgument);
  try {
    iterate(kSquare, 13);
  } catch (const SizeCapExceeded& e) {
    EXPECT_EQ(e.requested(), 8192u);
    EXPECT_EQ(e.cap(), kDefaultMaxDegree);
  }
}

TEST(RationalMap, ComposeExamples) {
  const RationalMap shift = RationalMap::polynomial({1.0, 1.0});
  EXPECT_TRUE(compose(kSquare, shift).projectively_equal(RationalMap::polynomial({1.0, 2.0, 1.0})));
  const RationalMap g(Polynomial{1.0, 0.0, 3.0}, Polynomial{2.0, 1.0});
  EXPECT_TRUE(compose(RationalMap::identity(), g).projectively_equal(g));
  const RationalMap inv(Polynomial{1.0}, Polynomial{0.0, 1.0});
  EXPECT_TRUE(compose(inv, inv).projectively_equal(RationalMap::identity()));
}

TEST(RationalMapProperty, ProjectiveConsistencyOfEvaluation) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 50; ++t) {
    const RationalMap m = random_integer_map(rng, 2 + t % 3);
    const Complex z{u(rng), u(rng)};
    Complex lambda{u(rng), u(rng)};
    if (std::abs(lambda) < 0.1) lambda = 1.3;
    SpherePoint a = SpherePoint::finite(z);
    SpherePoint b(lambda * z, lambda);
    EXPECT_TRUE(m(a).projectively_equal(m(b), 1e-9)) << "trial " << t;
  }
}

TEST(RationalMapProperty, IterateAgreesWithComposition) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 12; ++t) {
    const int d = 2 + t % 2;
    const RationalMap m = random_integer_map(rng, d);
    const int total = 2 + t % 3;
    const int split = 1 + t % (total - 1);
    const RationalMap lhs = iterate(m, total);
    const RationalMap rhs = compose(iterate(m, split), iterate(m, total - split));
    ASSERT_EQ(lhs.degree(), static_cast<int>(std::pow(d, total)));
    ASSERT_EQ(rhs.degree(), lhs.degree());

    const RationalMap oracle = exact_iterate(m, total);
    ASSERT_EQ(oracle.degree(), lhs.degree());
    EXPECT_TRUE(oracle.projectively_equal(lhs, 1e-12)) << format_map(m) << " n=" << total;
    EXPECT_TRUE(oracle.projectively_equal(rhs, 1e-12)) << format_map(m) << " n=" << total;

    for (int k = 0; k < 100; ++k) {
      const SpherePoint x = random_point(rng);
      SpherePoint direct = x;
      for (int j = 0; j < total; ++j) direct = m(direct);
      // expanded high-degree maps lose accuracy at badly conditioned points;
      // allow the forward error bound of Horner evaluation on top of 1e-8
      const double tol = 1e-8 + horner_error_bound(lhs, x) + horner_error_bound(rhs, x);
      try {
        EXPECT_LE(chordal_distance(lhs(x), rhs(x)), tol);
        EXPECT_LE(chordal_distance(lhs(x), direct), tol);
      } catch (const DegenerateEvaluation&) {
      }
    }
  }
}

TEST(RationalMapProperty, ChainRuleAtRandomPoints) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 30; ++t) {
    const RationalMap f = random_integer_map(rng, 2);
    const RationalMap g = random_integer_map(rng, 2);
    const RationalMap fg = compose(f, g);
    const RationalMap dfg = derivative(fg);
    const RationalMap df = derivative(f);
    const RationalMap dg = derivative(g);
    for (int k = 0; k < 10; ++k) {
      const Complex z = random_point(rng, 1.5).to_complex();
      const Complex gz = value(g, z);
      if (std::abs(g.denominator()(z)) < 1e-3 || std::abs(f.denominator()(gz)) < 1e-3) continue;
      const Complex lhs = value(dfg, z);
      const Complex rhs = value(df, gz) * value(dg, z);
      if (!std::isfinite(std::abs(lhs)) || !std::isfinite(std::abs(rhs))) continue;
      EXPECT_LE(std::abs(lhs - rhs), 1e-7 * std::max(1.0, std::abs(rhs))) << "trial " << t;
    }
  }
}

TEST(RationalMapProperty, ReducedMapsAreCoprime) {
  std::mt19937_64 rng(104);
  for (int t = 0; t < 40; ++t) {
    const RationalMap m = random_integer_map(rng, 2 + t % 3);
    EXPECT_GT(normalized_resultant(m.numerator(), m.denominator()), kCoprimeResultantThreshold);
  }
  const Polynomial shared{-0.5, 1.0};
  const RationalMap m(shared * Polynomial{1.0, 1.0}, shared * Polynomial{3.0, 0.0, 1.0});
  EXPECT_GT(normalized_resultant(m.numerator(), m.denominator()), kCoprimeResultantThreshold);
  EXPECT_LT(normalized_resultant(shared, shared * Polynomial{2.0, 1.0}), kCoprimeResultantThreshold);
}

TEST(RationalMap, ChartDerivativeAtInfinityUsesInverseCoordinate) {
  // Near infinity z^2 reads w -> w^2.
  EXPECT_NEAR(std::abs(kSquare.chart_derivative(SpherePoint::infinity())), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(kSquare.chart_derivative(SpherePoint::finite(1.0)) - Complex(2.0)), 0, 1e-15);
  // z = 2 lies outside the disk and so does R(2) = 2; in the charts 1/z the
  // derivative is z^2 R'(z) / R(z)^2 = 4 * 4 / 4.
  EXPECT_NEAR(std::abs(kChebyshev.chart_derivative(SpherePoint::finite(2.0)) - Complex(4.0)), 0,
              1e-12);
}

TEST(RationalMap, DegenerateEvaluationIsReported) {
  const RationalMap shared = RationalMap::from_coprime(Polynomial{-1.0, 0.0, 1.0}, Polynomial{-1.0, 1.0});
  EXPECT_THROW(shared(SpherePoint::finite(1.0)), DegenerateEvaluation);
}

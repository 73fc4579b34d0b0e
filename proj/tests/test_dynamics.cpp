#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "cartan/dynamics.hpp"
#include "cartan/error.hpp"
#include "cartan/parse.hpp"
#include "support.hpp"

using namespace cartan;
using namespace cartan::testing;

namespace {

const RationalMap kSquare = parse_map("z^2");
const RationalMap kChebyshev = parse_map("z^2-2");

bool near(const SpherePoint& p, Complex z, double tol = 1e-9) {
  return chordal_distance(p, SpherePoint::finite(z)) <= tol;
}

const CycleDatum* find_cycle(const std::vector<CycleDatum>& cycles, const SpherePoint& p) {
  for (const CycleDatum& c : cycles)
    for (const SpherePoint& q : c.points)
      if (chordal_distance(p, q) <= 1e-8) return &c;
  return nullptr;
}

}  // namespace

TEST(CriticalPoints, SquareAndChebyshev) {
  for (const RationalMap* m : {&kSquare, &kChebyshev}) {
    const auto crit = critical_points(*m);
    ASSERT_EQ(crit.size(), 2u);
    EXPECT_TRUE(near(crit[0].point, 0.0));
    EXPECT_EQ(crit[0].branch_index, 2);
    EXPECT_TRUE(crit[1].point.is_infinity());
    EXPECT_EQ(crit[1].branch_index, 2);
  }
}

TEST(CriticalPoints, CubeHasIndexThree) {
  const auto crit = critical_points(parse_map("z^3"));
  ASSERT_EQ(crit.size(), 2u);
  EXPECT_EQ(crit[0].branch_index, 3);
  EXPECT_EQ(crit[1].branch_index, 3);
}

TEST(CriticalPoints, NewtonMapAgreesWithSymbolicDerivative) {
  // P = z^2 + 1, Q = 2z. Oracle: P'Q - PQ' built from raw coefficient
  // vectors, then the quadratic formula.
  const std::vector<Complex> p{1.0, 0.0, 1.0};
  const std::vector<Complex> q{0.0, 2.0};
  const auto w = naive_add(naive_mul(naive_derivative(p), q), naive_mul(p, naive_derivative(q)), -1.0);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_LT(coeff_distance(w, {-2.0, 0.0, 2.0}), 1e-15);
  const Complex disc = std::sqrt(w[1] * w[1] - 4.0 * w[2] * w[0]);
  const Complex r1 = (-w[1] - disc) / (2.0 * w[2]);
  const Complex r2 = (-w[1] + disc) / (2.0 * w[2]);

  const RationalMap newton = parse_map("(z^2+1)/(2z)");
  const auto crit = critical_points(newton);
  ASSERT_EQ(crit.size(), 2u);
  EXPECT_TRUE(near(crit[0].point, r1));
  EXPECT_TRUE(near(crit[1].point, r2));
  for (const auto& c : crit) EXPECT_EQ(c.branch_index, 2);
  EXPECT_EQ(branch_index(newton, SpherePoint::finite(0.0)), 1);
  EXPECT_EQ(branch_index(newton, SpherePoint::infinity()), 1);
  EXPECT_EQ(branch_index(newton, SpherePoint::finite(Complex(0, 1))), 1);
}

TEST(BranchIndex, Examples) {
  EXPECT_EQ(branch_index(parse_map("z^3"), SpherePoint::finite(0.0)), 3);
  EXPECT_EQ(branch_index(kSquare, SpherePoint::finite(1.0)), 1);
  EXPECT_EQ(branch_index(kSquare, SpherePoint::infinity()), 2);
  // pole of order two: 1/z^2 at 0
  EXPECT_EQ(branch_index(parse_map("1/z^2"), SpherePoint::finite(0.0)), 2);
}

TEST(RiemannHurwitz, RandomIntegerMaps) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const RationalMap m = random_integer_map(rng, 2 + t % 3);
    const auto crit = critical_points(m);
    int total = 0;
    for (const auto& c : crit) {
      EXPECT_GE(c.branch_index, 2);
      EXPECT_EQ(c.branch_index, branch_index(m, c.point));
      total += c.branch_index - 1;
    }
    EXPECT_EQ(total, 2 * m.degree() - 2) << format_map(m);
  }
}

TEST(CriticalPoints, DegreeOneIsRejected) {
  EXPECT_THROW(critical_points(parse_map("2z+1")), DegreeTooLow);
}

TEST(PeriodicPoints, FixedPointsOfSquare) {
  const auto cycles = periodic_points(kSquare, 1);
  ASSERT_EQ(cycles.size(), 3u);
  const CycleDatum* zero = find_cycle(cycles, SpherePoint::finite(0.0));
  const CycleDatum* one = find_cycle(cycles, SpherePoint::finite(1.0));
  const CycleDatum* inf = find_cycle(cycles, SpherePoint::infinity());
  ASSERT_TRUE(zero && one && inf);
  EXPECT_EQ(zero->character, CycleCharacter::Superattracting);
  EXPECT_NEAR(std::abs(one->multiplier - Complex(2.0)), 0, 1e-12);
  EXPECT_EQ(one->character, CycleCharacter::Repelling);
  EXPECT_EQ(inf->character, CycleCharacter::Superattracting);
}

TEST(PeriodicPoints, FixedPointsOfChebyshev) {
  const auto cycles = periodic_points(kChebyshev, 1);
  ASSERT_EQ(cycles.size(), 3u);
  const CycleDatum* two = find_cycle(cycles, SpherePoint::finite(2.0));
  const CycleDatum* minus_one = find_cycle(cycles, SpherePoint::finite(-1.0));
  ASSERT_TRUE(two && minus_one);
  EXPECT_NEAR(std::abs(two->multiplier - Complex(4.0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(minus_one->multiplier - Complex(-2.0)), 0, 1e-12);
  EXPECT_TRUE(find_cycle(cycles, SpherePoint::infinity()));
}

TEST(PeriodicPoints, TwoCycleOfSquare) {
  const Complex w1 = std::polar(1.0, 2 * std::numbers::pi / 3);
  const Complex w2 = std::polar(1.0, 4 * std::numbers::pi / 3);
  // Oracle: multiplier by direct chain rule, R' = 2z.
  const Complex expected = (2.0 * w1) * (2.0 * w2);
  EXPECT_NEAR(std::abs(expected - Complex(4.0)), 0, 1e-14);

  const auto cycles = periodic_points(kSquare, 2);
  const CycleDatum* c = find_cycle(cycles, SpherePoint::finite(w1));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->period, 2);
  EXPECT_TRUE(find_cycle({*c}, SpherePoint::finite(w2)));
  EXPECT_NEAR(std::abs(c->multiplier - expected), 0, 1e-10);
  EXPECT_EQ(c->character, CycleCharacter::Repelling);
  int total = 0;
  for (const auto& cy : cycles) total += cy.period;
  EXPECT_EQ(total, 5);  // z^4 = z on the sphere: 0, inf, 1 and one 2-cycle
}

TEST(PeriodicPoints, MultiplierIsIndependentOfRepresentative) {
  for (const char* src : {"z^2 - 1", "z^2 + i", "(z^2+1)/(2z)", "z^3 - 3z + 1", "(z^2 - 2)/(z^2 + 3)"}) {
    const RationalMap m = parse_map(src);
    for (int n = 1; n <= 3; ++n) {
      for (const CycleDatum& c : periodic_points(m, n)) {
        std::vector<SpherePoint> rotated = c.points;
        for (std::size_t s = 0; s < rotated.size(); ++s) {
          std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
          const Complex other = cycle_multiplier(m, rotated);
          EXPECT_LE(std::abs(other - c.multiplier), 1e-7 * std::max(1.0, std::abs(c.multiplier)))
              << src << " period " << n;
        }
        // recompute starting from R(representative), walking the orbit
        std::vector<SpherePoint> walk{m(c.representative())};
        for (int k = 1; k < c.period; ++k) walk.push_back(m(walk.back()));
        EXPECT_LE(std::abs(cycle_multiplier(m, walk) - c.multiplier),
                  1e-7 * std::max(1.0, std::abs(c.multiplier)));
      }
    }
  }
}

TEST(CycleCharacter, Thresholds) {
  EXPECT_EQ(cycle_character(0.0), CycleCharacter::Superattracting);
  EXPECT_EQ(cycle_character(0.5), CycleCharacter::Attracting);
  EXPECT_EQ(cycle_character(std::polar(1.0, 0.3)), CycleCharacter::Indifferent);
  EXPECT_EQ(cycle_character(1.5), CycleCharacter::Repelling);
}

TEST(DefaultMaxPeriod, KeepsIterateDegreeSmall) {
  EXPECT_EQ(default_max_period(2), 6);
  EXPECT_EQ(default_max_period(3), 5);
  EXPECT_EQ(default_max_period(4), 4);
  EXPECT_EQ(default_max_period(16), 2);
  EXPECT_EQ(default_max_period(300), 1);
}

TEST(ClassifyPoint, ChebyshevCriticalPointLandsOnRepellingFixedPoint) {
  std::vector<SpherePoint> orbit;
  const CycleCatalog catalog = cycle_catalog(kChebyshev);
  const MembershipVerdict v = classify_point(kChebyshev, catalog, SpherePoint::finite(0.0), {}, &orbit);
  EXPECT_EQ(v.verdict, Verdict::InJulia);
  EXPECT_EQ(v.certificate.kind, CertificateKind::PreperiodicToRepelling);
  ASSERT_TRUE(v.certificate.cycle.has_value());
  EXPECT_EQ(v.certificate.cycle->period, 1);
  EXPECT_TRUE(near(v.certificate.cycle->representative(), 2.0));
  EXPECT_NEAR(std::abs(v.certificate.cycle->multiplier - Complex(4.0)), 0, 1e-9);
  EXPECT_EQ(v.certificate.steps, 2);
  ASSERT_GE(orbit.size(), 3u);
  EXPECT_TRUE(near(orbit[0], 0.0));
  EXPECT_TRUE(near(orbit[1], -2.0));
  EXPECT_TRUE(near(orbit[2], 2.0));
}

TEST(ClassifyPoint, SquareExamples) {
  const MembershipVerdict zero = classify_point(kSquare, SpherePoint::finite(0.0));
  EXPECT_EQ(zero.verdict, Verdict::InFatou);
  EXPECT_EQ(zero.certificate.kind, CertificateKind::ConvergesToSuperattracting);
  const MembershipVerdict three = classify_point(kSquare, SpherePoint::finite(3.0));
  EXPECT_EQ(three.verdict, Verdict::InFatou);
  EXPECT_EQ(three.certificate.kind, CertificateKind::EscapeToInfinity);
  const MembershipVerdict one = classify_point(kSquare, SpherePoint::finite(-1.0));
  EXPECT_EQ(one.verdict, Verdict::InJulia);
}

TEST(ClassifyPoint, AttractingCycle) {
  const RationalMap m = parse_map("z^2 + 0.1");
  const MembershipVerdict v = classify_point(m, SpherePoint::finite(0.0));
  EXPECT_EQ(v.verdict, Verdict::InFatou);
  EXPECT_EQ(v.certificate.kind, CertificateKind::ConvergesToAttracting);
  ASSERT_TRUE(v.certificate.cycle);
  const double fixed = (1 - std::sqrt(0.6)) / 2;
  EXPECT_TRUE(near(v.certificate.cycle->representative(), fixed, 1e-8));
}

TEST(ClassifyPoint, ParabolicCaseStaysUndetermined) {
  const RationalMap m = parse_map("z^2 + 0.25");
  Budget b;
  b.max_iterations = 2000;
  const MembershipVerdict v = classify_point(m, SpherePoint::finite(0.0), b);
  EXPECT_EQ(v.verdict, Verdict::Undetermined);
  EXPECT_EQ(v.certificate.kind, CertificateKind::None);
  EXPECT_FALSE(v.note.empty());
}

TEST(ClassifyPoint, CertificatesMatchVerdicts) {
  std::mt19937_64 rng(77);
  Budget b;
  b.max_iterations = 500;
  for (const char* src : {"z^2", "z^2 - 1", "z^2 + i", "(z^2+1)/(2z)", "z^2 - 2", "z^3 + 0.3z"}) {
    const RationalMap m = parse_map(src);
    const CycleCatalog catalog = cycle_catalog(m, b);
    for (int k = 0; k < 30; ++k) {
      const MembershipVerdict v = classify_point(m, catalog, random_point(rng, 2.0), b);
      switch (v.verdict) {
        case Verdict::InJulia:
          EXPECT_EQ(v.certificate.kind, CertificateKind::PreperiodicToRepelling);
          break;
        case Verdict::InFatou:
          EXPECT_TRUE(v.certificate.kind == CertificateKind::ConvergesToAttracting ||
                      v.certificate.kind == CertificateKind::ConvergesToSuperattracting ||
                      v.certificate.kind == CertificateKind::EscapeToInfinity);
          break;
        case Verdict::Undetermined:
          EXPECT_EQ(v.certificate.kind, CertificateKind::None);
          break;
      }
    }
  }
}

TEST(ClassifyPoint, StableAlongOrbits) {
  std::mt19937_64 rng(78);
  Budget b;
  b.max_iterations = 500;
  for (const char* src : {"z^2", "z^2 - 1", "z^2 + i", "(z^2+1)/(2z)", "z^2 - 2"}) {
    const RationalMap m = parse_map(src);
    const CycleCatalog catalog = cycle_catalog(m, b);
    int compared = 0;
    for (int k = 0; k < 40; ++k) {
      const SpherePoint p = random_point(rng, 2.0);
      const MembershipVerdict a = classify_point(m, catalog, p, b);
      const MembershipVerdict c = classify_point(m, catalog, m(p), b);
      if (a.verdict == Verdict::Undetermined || c.verdict == Verdict::Undetermined) continue;
      EXPECT_EQ(a.verdict, c.verdict) << src;
      ++compared;
    }
    EXPECT_GT(compared, 0) << src;
  }
  // Julia points through their orbits: preimages of a repelling fixed point.
  for (const FiberPoint& f : fiber(kChebyshev, SpherePoint::finite(-1.0))) {
    EXPECT_EQ(classify_point(kChebyshev, f.point).verdict, Verdict::InJulia);
  }
}

TEST(Fiber, CountsWithBranchIndex) {
  const auto generic = fiber(kSquare, SpherePoint::finite(4.0));
  ASSERT_EQ(generic.size(), 2u);
  for (const auto& f : generic) EXPECT_EQ(f.branch_index, 1);
  const auto branched = fiber(kSquare, SpherePoint::finite(0.0));
  ASSERT_EQ(branched.size(), 1u);
  EXPECT_EQ(branched[0].branch_index, 2);
  const auto at_inf = fiber(parse_map("(z^2+1)/(2z)"), SpherePoint::infinity());
  int total = 0;
  for (const auto& f : at_inf) total += f.branch_index;
  EXPECT_EQ(total, 2);
}

TEST(EscapeRadius, PolynomialMaps) {
  EXPECT_DOUBLE_EQ(escape_radius(kSquare), 2.0);
  EXPECT_DOUBLE_EQ(escape_radius(kChebyshev), 4.0);
  EXPECT_THROW(escape_radius(parse_map("(z^2+1)/(2z)")), InvalidArgument);
  // every point beyond the radius escapes monotonically
  const RationalMap m = parse_map("z^2 + 3z - 1");
  const double r = escape_radius(m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    const Complex z = std::polar(r * 1.0001, angle(rng));
    EXPECT_GT(std::abs(m(SpherePoint::finite(z)).to_complex()), std::abs(z));
  }
}

TEST(JuliaSample, UnitCircleForSquare) {
  const auto pts = julia_sample(kSquare, 1000, 20, 0xC0FFEE);
  ASSERT_EQ(pts.size(), 1000u);
  for (const auto& p : pts) EXPECT_LE(std::abs(std::abs(p.to_complex()) - 1), 1e-6);
}

TEST(JuliaSample, IntervalForChebyshev) {
  const auto pts = julia_sample(kChebyshev, 1000, 20, 0xC0FFEE);
  ASSERT_EQ(pts.size(), 1000u);
  for (const auto& p : pts) {
    const Complex z = p.to_complex();
    EXPECT_LE(std::abs(z.imag()), 1e-6);
    EXPECT_GE(z.real(), -2 - 1e-6);
    EXPECT_LE(z.real(), 2 + 1e-6);
  }
}

TEST(JuliaSample, DepthZeroIsTheSeed) {
  const auto pts = julia_sample(kSquare, 3, 0, 1);
  ASSERT_EQ(pts.size(), 3u);
  const SpherePoint seed = repelling_seed(kSquare);
  for (const auto& p : pts) EXPECT_TRUE(p.projectively_equal(seed));
  const auto cycles = periodic_points(kSquare, 2);
  const CycleDatum* c = find_cycle(cycles, seed);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->character, CycleCharacter::Repelling);
}

TEST(JuliaSample, ImagesStayOnTheInvariantSet) {
  for (const auto& p : julia_sample(kSquare, 500, 16, 3)) {
    EXPECT_LE(std::abs(std::abs(kSquare(p).to_complex()) - 1), 1e-6);
  }
  for (const auto& p : julia_sample(kChebyshev, 500, 16, 3)) {
    const Complex z = kChebyshev(p).to_complex();
    EXPECT_LE(std::abs(z.imag()), 1e-6);
    EXPECT_LE(std::abs(z.real()), 2 + 1e-6);
  }
}

TEST(JuliaSample, DeeperSamplingRefinesTheSameSet) {
  // Each deeper path extends the shallower one with the same seed, so
  // pushing the deeper sample forward five steps recovers the shallow one.
  const auto shallow = julia_sample(kSquare, 400, 20, 9);
  const auto deep = julia_sample(kSquare, 400, 25, 9);
  ASSERT_EQ(shallow.size(), deep.size());
  std::vector<SpherePoint> pushed;
  for (SpherePoint x : deep) {
    EXPECT_LE(std::abs(std::abs(x.to_complex()) - 1), 1e-6);
    for (int j = 0; j < 5; ++j) x = kSquare(x);
    pushed.push_back(x);
  }
  auto one_sided = [](const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
    double worst = 0;
    for (const auto& x : a) {
      double best = INFINITY;
      for (const auto& y : b) best = std::min(best, chordal_distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  EXPECT_LE(std::max(one_sided(pushed, shallow), one_sided(shallow, pushed)), 1e-3);
}

TEST(JuliaSample, DeterministicPerSeed) {
  const auto a = julia_sample(kChebyshev, 50, 12, 42);
  const auto b = julia_sample(kChebyshev, 50, 12, 42);
  const auto c = julia_sample(kChebyshev, 50, 12, 43);
  ASSERT_EQ(a.size(), b.size());
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].z(), b[k].z());
    EXPECT_EQ(a[k].w(), b[k].w());
    differs = differs || !a[k].projectively_equal(c[k]);
  }
  EXPECT_TRUE(differs);
}

TEST(MixSeed, SpreadsNearbySeeds) {
  EXPECT_NE(mix_seed(1), mix_seed(2));
  EXPECT_EQ(mix_seed(7), mix_seed(7));
}

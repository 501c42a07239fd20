#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "tribody/central_config.hpp"
#include "tribody/error.hpp"
#include "tribody/shape_frame.hpp"

using namespace tribody;

namespace {

const double kSqrt3 = std::numbers::sqrt3;
const double kMuRect = 5.0 / std::numbers::sqrt2;

MassSystem equal(double a = 1.0) { return MassSystem({1.0, 1.0, 1.0}, a); }

// Classical Euler quintic for a = 1 in x = r23 / r12 with body 2 in the middle,
// solved by plain bisection on (0, 10).
double euler_quintic_root(double m1, double m2, double m3) {
  auto p = [&](double x) {
    return (m1 + m2) * std::pow(x, 5) + (3 * m1 + 2 * m2) * std::pow(x, 4) + (3 * m1 + m2) * std::pow(x, 3) -
           (m2 + 3 * m3) * x * x - (2 * m2 + 3 * m3) * x - (m2 + m3);
  };
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(MuOnChart, KnownPoints) {
  const ShapeChart chart(equal());
  EXPECT_NEAR(mu_on_chart(0.0, kSqrt3, chart), 3.0, 1e-14);
  EXPECT_NEAR(mu_on_chart(0.0, 0.0, chart), kMuRect, 1e-14);
  EXPECT_NEAR(mu_on_chart(3.0, 0.0, chart), kMuRect, 1e-14);
  EXPECT_NEAR(mu_on_chart(-3.0, 0.0, chart), kMuRect, 1e-14);
  EXPECT_THROW(mu_on_chart(1.0, 0.0, chart), Error);
}

// Rigid motions and scalings of the chart triangle leave mu unchanged.
TEST(MuOnChart, GaugeInvariance) {
  gen::Rng rng(131);
  for (int trial = 0; trial < 200; ++trial) {
    const MassSystem sys(gen::random_masses(rng), gen::uniform(rng, 0.3, 3.0));
    const ShapeChart chart(sys);
    const double x = gen::uniform(rng, -3, 3), y = gen::uniform(rng, 0.2, 3);
    const auto pts = chart.points(x, y);
    const Planar rot = std::polar(gen::uniform(rng, 0.1, 10.0), gen::uniform(rng, -3.14, 3.14));
    const Planar shift{gen::uniform(rng, -5, 5), gen::uniform(rng, -5, 5)};
    std::vector<Planar> moved;
    for (const auto& p : pts) moved.push_back(rot * p + shift);
    const auto centred = reduce_to_barycenter(PhaseState{moved, std::vector<Planar>(3), 0.0}, sys).q;
    const double mu = mu_on_chart(x, y, chart);
    EXPECT_NEAR(configurational_measure(centred, sys), mu, 1e-12 * mu);
  }
}

TEST(Equilateral, EqualAndUnequalMasses) {
  const auto eq = equilateral_config(equal());
  EXPECT_EQ(eq[0].kind, CentralKind::EquilateralPlus);
  EXPECT_EQ(eq[1].kind, CentralKind::EquilateralMinus);
  EXPECT_NEAR(eq[0].mu_c, 3.0, 1e-14);
  EXPECT_GT(oriented_area2(eq[0].shape), 0.0);
  EXPECT_LT(oriented_area2(eq[1].shape), 0.0);

  const auto un = equilateral_config(MassSystem({4.0, 2.0, 1.0}, 1.0));
  for (const auto& r : un) EXPECT_LE(r.rho_check, 1e-12);
}

TEST(EulerCollinear, EqualMassesMidpoint) {
  for (int middle : {1, 2, 3}) {
    const auto r = euler_collinear(equal(), middle);
    EXPECT_NEAR(r.ratio, 1.0, 1e-12);
    EXPECT_NEAR(r.mu_c, kMuRect, 1e-12);
    EXPECT_LE(r.rho_check, 1e-10);
    const std::size_t m = static_cast<std::size_t>(middle - 1);
    EXPECT_LE(std::abs(r.shape[m]), 1e-12);
    // Same shape as chart point (0, 0) up to similarity.
    const auto chart_cls = classify_shape(ShapeChart(equal()).points(0.0, 0.0), equal());
    const auto cls = classify_shape(r.shape, equal());
    EXPECT_EQ(cls.kind, ShapeKind::RectilinearCC);
    EXPECT_EQ(chart_cls.kind, ShapeKind::RectilinearCC);
  }
  EXPECT_EQ(euler_collinear(equal(), 1).kind, CentralKind::Rectilinear1);
  EXPECT_EQ(euler_collinear(equal(), 3).kind, CentralKind::Rectilinear3);
}

TEST(EulerCollinear, MatchesQuinticOracle) {
  const MassSystem sys({4.0, 2.0, 1.0}, 1.0);
  const auto r = euler_collinear(sys, 2);
  EXPECT_NEAR(r.ratio, euler_quintic_root(4.0, 2.0, 1.0), 1e-10);
  EXPECT_LE(r.rho_check, 1e-10);
  // Cyclic orderings use the quintic with relabelled masses.
  EXPECT_NEAR(euler_collinear(sys, 1).ratio, euler_quintic_root(1.0, 4.0, 2.0), 1e-10);
  EXPECT_NEAR(euler_collinear(sys, 3).ratio, euler_quintic_root(2.0, 1.0, 4.0), 1e-10);
}

TEST(EulerCollinear, RandomMassesAgainstQuintic) {
  gen::Rng rng(137);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = gen::random_masses(rng, 0.01, 10.0);
    const MassSystem sys(m, 1.0);
    EXPECT_NEAR(euler_collinear(sys, 2).ratio, euler_quintic_root(m[0], m[1], m[2]), 1e-10);
  }
}

TEST(EulerCollinear, OtherExponents) {
  for (double a : {0.5, 2.0, 3.0}) {
    for (int middle : {1, 2, 3}) {
      EXPECT_LE(euler_collinear(equal(a), middle).rho_check, 1e-10);
      EXPECT_LE(euler_collinear(MassSystem({4.0, 2.0, 1.0}, a), middle).rho_check, 1e-10);
    }
  }
  EXPECT_NEAR(euler_collinear_residual(1.0, 1.0, 1.0, 1.0, 0.5), 0.0, 1e-14);
}

TEST(EulerCollinear, BadIndex) {
  try {
    euler_collinear(equal(), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(CriticalMeasures, EqualMasses) {
  const auto c = critical_measures(equal());
  for (double v : c.mu_c) EXPECT_NEAR(v, kMuRect, 1e-12);
  EXPECT_NEAR(c.mu_eq, 3.0, 1e-14);
}

TEST(CriticalMeasures, UnequalMassesAreDistinctAndAboveMinimum) {
  const auto c = critical_measures(MassSystem({4.0, 2.0, 1.0}, 1.0));
  EXPECT_GT(std::abs(c.mu_c[0] - c.mu_c[1]), 1e-3);
  EXPECT_GT(std::abs(c.mu_c[1] - c.mu_c[2]), 1e-3);
  EXPECT_GT(std::abs(c.mu_c[2] - c.mu_c[0]), 1e-3);
  for (double v : c.mu_c) EXPECT_GT(v, c.mu_eq);
}

TEST(CriticalMeasures, EquilateralIsStrictLocalMinimum) {
  for (const auto& m : {std::vector<double>{1, 1, 1}, std::vector<double>{4, 2, 1}, std::vector<double>{1000, 100, 1}}) {
    const ShapeChart chart(MassSystem(m, 1.0));
    const double mu_eq = mu_on_chart(0.0, kSqrt3, chart);
    for (int k = 0; k < 8; ++k) {
      const double t = k * std::numbers::pi / 4;
      EXPECT_GT(mu_on_chart(1e-3 * std::cos(t), kSqrt3 + 1e-3 * std::sin(t), chart), mu_eq);
    }
  }
}

TEST(ClassifyShape, ChartPoints) {
  const auto sys = equal();
  const ShapeChart chart(sys);
  EXPECT_EQ(classify_shape(chart.points(0.0, 0.0), sys).kind, ShapeKind::RectilinearCC);
  EXPECT_EQ(classify_shape(chart.points(0.5, 0.0), sys).kind, ShapeKind::OtherCollinear);
  EXPECT_EQ(classify_shape(chart.points(0.0, 1.0), sys).kind, ShapeKind::Isosceles);
  EXPECT_EQ(classify_shape(chart.points(0.0, kSqrt3), sys).kind, ShapeKind::Equilateral);
  const auto g = classify_shape(chart.points(0.3, 0.7), sys);
  EXPECT_EQ(g.kind, ShapeKind::Generic);
  for (double gap : g.gaps) EXPECT_GT(gap, 1e-2);
}

TEST(ClassifyShape, ScaleAndPlacementFree) {
  const auto sys = equal();
  std::vector<Planar> pts;
  for (const auto& p : ShapeChart(sys).points(0.0, 1.0)) pts.push_back(37.0 * p + Planar(5.0, -2.0));
  EXPECT_EQ(classify_shape(pts, sys).kind, ShapeKind::Isosceles);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "generators.hpp"
#include "tribody/error.hpp"
#include "tribody/numerics.hpp"

using namespace tribody;
using namespace tribody::numerics;

TEST(ScanGeometric, FindsEachSignChange) {
  const auto brackets = scan_geometric([](double x) { return (x - 0.01) * (x - 7.0); }, 1e-4, 1e3, 200);
  ASSERT_EQ(brackets.size(), 2u);
  EXPECT_LE(brackets[0].lo, 0.01);
  EXPECT_GE(brackets[0].hi, 0.01);
  EXPECT_LE(brackets[1].lo, 7.0);
  EXPECT_GE(brackets[1].hi, 7.0);
}

TEST(ScanGeometric, NoSignChangeGivesNothing) {
  EXPECT_TRUE(scan_geometric([](double x) { return x * x + 1.0; }, 1e-3, 1e3, 100).empty());
}

TEST(SolveBracketed, SqrtTwo) {
  const double r = solve_bracketed([](double x) { return x * x - 2.0; }, [](double x) { return 2 * x; }, 0.0, 2.0);
  EXPECT_NEAR(r, std::numbers::sqrt2, 4e-16);
  const double r2 = solve_bracketed([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  EXPECT_NEAR(r2, std::numbers::sqrt2, 4e-16);
}

TEST(SolveBracketed, SurvivesBadNewtonSteps) {
  // atan has Newton overshoot far from the root.
  const double r = solve_bracketed([](double x) { return std::atan(x - 3.0); },
                                   [](double x) { return 1.0 / (1.0 + (x - 3.0) * (x - 3.0)); }, -50.0, 40.0);
  EXPECT_NEAR(r, 3.0, 1e-14);
}

TEST(SolveBracketed, RejectsSameSign) {
  try {
    solve_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RootNotBracketed);
  }
}

TEST(SolveBracketed, RandomCubicsAgainstBisection) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double root = gen::uniform(rng, -5, 5);
    const double c = gen::uniform(rng, 0.1, 3.0);
    auto f = [&](double x) { return (x - root) * ((x - root) * (x - root) + c); };
    double lo = -10, hi = 10;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < 0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(solve_bracketed(f, -10.0, 10.0), 0.5 * (lo + hi), 1e-13);
  }
}

TEST(Richardson, RemovesLeadingPowers) {
  // g(h) = 2 + 3h^2 - 5h^4 + h^6 on a halving ladder.
  std::vector<double> v;
  for (int k = 0; k < 5; ++k) {
    const double h = 0.1 / std::pow(2.0, k);
    v.push_back(2.0 + 3 * h * h - 5 * std::pow(h, 4) + std::pow(h, 6));
  }
  const auto e = richardson_halving(v, 2);
  EXPECT_NEAR(e.value, 2.0, 1e-14);

  std::vector<double> w;
  for (int k = 0; k < 6; ++k) {
    const double h = 0.04 / std::pow(2.0, k);
    w.push_back(13.5 + 2 * h - 7 * h * h);
  }
  EXPECT_NEAR(richardson_halving(w, 1).value, 13.5, 1e-12);
}

TEST(Richardson, SingleValuePassesThrough) {
  const std::vector<double> v{4.25};
  const auto e = richardson_halving(v, 2);
  EXPECT_EQ(e.value, 4.25);
}

TEST(FitMonomials, ExactEvenPolynomial) {
  std::vector<double> x, y;
  for (int i = -20; i <= 20; ++i) {
    const double t = 0.05 * i;
    x.push_back(t);
    y.push_back(4.0 * t * t);
  }
  const std::vector<int> powers{2, 4};
  const auto fit = fit_monomials(x, y, powers);
  EXPECT_NEAR(fit.coefficients[0], 4.0, 1e-13);
  EXPECT_NEAR(fit.coefficients[1], 0.0, 1e-12);
  EXPECT_LE(fit.rms_residual, 1e-14);
}

TEST(FitMonomials, RecoversRandomCoefficients) {
  gen::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = gen::uniform(rng, -3, 3), c1 = gen::uniform(rng, -3, 3),
                 c3 = gen::uniform(rng, -3, 3);
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
      const double t = gen::uniform(rng, -1, 1);
      x.push_back(t);
      y.push_back(c0 + c1 * t + c3 * t * t * t);
    }
    const std::vector<int> powers{0, 1, 3};
    const auto fit = fit_monomials(x, y, powers);
    EXPECT_NEAR(fit.coefficients[0], c0, 1e-12);
    EXPECT_NEAR(fit.coefficients[1], c1, 1e-12);
    EXPECT_NEAR(fit.coefficients[2], c3, 1e-12);
  }
}

TEST(TanhSinh, EndpointSingularities) {
  EXPECT_NEAR(integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-10);
  EXPECT_NEAR(integrate_tanh_sinh([](double x) { return -std::log(x); }, 0.0, 1.0), 1.0, 1e-12);
  // 1 - x^2 cancels near the endpoints, which caps the attainable accuracy.
  EXPECT_NEAR(integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1.0, 1.0),
              std::numbers::pi, 1e-7);
  EXPECT_NEAR(integrate_tanh_sinh([](double x) { return std::exp(x); }, 0.0, 1.0), std::numbers::e - 1, 1e-13);
}

#include "tribody/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tribody/error.hpp"
#include "tribody/shape_frame.hpp"

namespace tribody {

namespace {

void require_three(std::span<const Planar> Q) {
  if (Q.size() != 3) throw Error(ErrorKind::InvalidArgument, "shape quantities need three bodies");
}

double pair_sum(const MassSystem& sys) {
  return sys.mass(0) * sys.mass(1) + sys.mass(1) * sys.mass(2) + sys.mass(2) * sys.mass(0);
}

bool is_halving(std::span<const double> x) {
  if (x.size() < 2) return false;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i] - 0.5 * x[i - 1]) > 1e-12 * std::abs(x[i - 1])) return false;
  }
  return true;
}

}  // namespace

double f1_of(std::span<const Planar> Q, const MassSystem& sys) {
  require_three(Q);
  check_separation(Q, sys);
  const double a = sys.exponent();
  const double Delta = oriented_area2(Q);
  double s = 0.0;
  for (std::size_t l = 0; l < 3; ++l) {
    const std::size_t j = (l + 1) % 3, k = (l + 2) % 3;
    const double r_jk = std::abs(Q[j] - Q[k]);
    const double r_kl = std::abs(Q[k] - Q[l]);
    const double r_lj = std::abs(Q[l] - Q[j]);
    const double d = std::pow(r_kl, -(a + 2.0)) - std::pow(r_lj, -(a + 2.0));
    s += sys.mass(l) * std::pow(r_jk, -(a + 4.0)) * d * d;
  }
  return (a + 2.0) * sys.mass_product() * Delta * Delta * s;
}

double f2_of(std::span<const Planar> Q, const MassSystem& sys, double mu) {
  require_three(Q);
  check_separation(Q, sys);
  const double a = sys.exponent();
  double s = 0.0;
  for (auto [j, k] : body_pairs(3)) {
    s += (sys.mass(j) + sys.mass(k)) * std::pow(std::abs(Q[j] - Q[k]), -(a + 2.0));
  }
  return sys.total_mass() / sys.mass_product() * (2.0 * a * mu - s);
}

double condition_residual(const ConditionInputs& in, const MassSystem& sys, double mu) {
  const double gap = in.B - in.C * in.C;
  if (gap < -1e-9) throw Error(ErrorKind::SundmanViolation, "B < C^2");
  const RhoRoutes r = rho_of(in.Q, sys, mu);
  if (r.rho <= central_rho_threshold(sys, mu)) {
    throw Error(ErrorKind::CentralConfiguration, "condition is undefined at rho = 0");
  }
  const double a = sys.exponent();
  const double M = sys.total_mass();
  const double m123 = sys.mass_product();
  const double rho2 = r.rho * r.rho;
  const double f1 = f1_of(in.Q, sys);
  const double f2 = f2_of(in.Q, sys, mu);
  const double g = std::max(gap, 0.0);
  return std::pow(in.I_phys, 0.5 * (2.0 - a)) +
         (m123 / M) * (m123 / M) * g * (f1 / (rho2 * rho2) + f2 / rho2) +
         2.0 * in.epsilon * in.C * std::sqrt(m123 * g / M) / r.rho;
}

EpsilonChoice epsilon_rule(double C) {
  if (C > 0.0) return {-1, false};
  if (C < 0.0) return {1, false};
  return {1, true};
}

SeriesFit series_fit_critical_path(const CriticalPath& path, double max_x) {
  std::vector<double> xs, ys;
  bool neg = false, pos = false;
  for (const auto& line : path.polylines) {
    for (const auto& p : line) {
      if (std::abs(p.x) > max_x) continue;
      xs.push_back(p.x);
      ys.push_back(p.y * p.y);
      neg = neg || p.x < 0.0;
      pos = pos || p.x > 0.0;
    }
  }
  if (xs.size() < 20 || !neg || !pos) {
    throw Error(ErrorKind::InsufficientPoints,
                "series fit needs at least 20 contour points with both signs of x");
  }
  const int powers[] = {2, 4};
  const numerics::PolyFit fit = numerics::fit_monomials(xs, ys, powers);
  return {fit.coefficients[0], fit.coefficients[1], fit.rms_residual, xs.size()};
}

SeriesFit rho2_fit_on_path(const CriticalPath& path, const ShapeChart& chart, double max_x) {
  std::vector<double> xs, vs;
  for (const auto& line : path.polylines) {
    for (const auto& p : line) {
      if (std::abs(p.x) > max_x || (p.x == 0.0 && p.y == 0.0)) continue;
      const auto pts = chart.points(p.x, p.y);
      const ShapeFrame f = frame_from_shape(pts, chart.system());
      xs.push_back(p.x);
      vs.push_back(f.rho * f.rho);
    }
  }
  if (xs.size() < 20) throw Error(ErrorKind::InsufficientPoints, "rho^2 fit needs at least 20 points");
  const int powers[] = {2, 4};
  const numerics::PolyFit fit = numerics::fit_monomials(xs, vs, powers);
  return {fit.coefficients[0], fit.coefficients[1], fit.rms_residual, xs.size()};
}

double critical_path_y(const ShapeChart& chart, double level, double x) {
  if (x == 0.0) throw Error(ErrorKind::InvalidArgument, "critical_path_y needs x != 0");
  auto F = [&](double y) { return mu_on_chart(x, y, chart) - level; };
  const double step = std::abs(x) / 20.0;
  double y_prev = step;
  double f_prev = F(y_prev);
  for (int i = 2; i <= 400; ++i) {
    const double y = i * step;
    const double fy = F(y);
    if (fy == 0.0) return y;
    if (std::signbit(fy) != std::signbit(f_prev)) {
      return numerics::solve_bracketed(F, y_prev, y, 1e-16);
    }
    y_prev = y;
    f_prev = fy;
  }
  throw Error(ErrorKind::NoRoot, "no level crossing above the chart point");
}

PathRow path_row(const ShapeChart& chart, double x, double y) {
  const auto pts = chart.points(x, y);
  const MassSystem& sys = chart.system();
  const ShapeFrame f = frame_from_shape(pts, sys);
  PathRow row;
  row.x = x;
  row.y = y;
  row.rho2 = f.rho * f.rho;
  row.f1 = f1_of(f.Q, sys);
  row.f2 = f2_of(f.Q, sys, f.mu);
  row.f1_over_rho2 = row.f1 / row.rho2;
  row.f1_rho2_plus_f2 = row.f1_over_rho2 + row.f2;
  row.f_over_rho4 = row.f1 / (row.rho2 * row.rho2) + row.f2 / row.rho2;
  return row;
}

PathLimits series_limits_on_path(const ShapeChart& chart, double level,
                                 std::span<const double> x_values) {
  PathLimits out;
  for (double x : x_values) out.rows.push_back(path_row(chart, x, critical_path_y(chart, level, x)));
  if (is_halving(x_values)) {
    std::vector<double> a, b;
    for (const auto& r : out.rows) {
      a.push_back(r.f_over_rho4);
      b.push_back(r.f1_rho2_plus_f2);
    }
    out.f_over_rho4 = numerics::richardson_halving(a, 2);
    out.f1_rho2_plus_f2 = numerics::richardson_halving(b, 2);
  }
  return out;
}

std::vector<double> default_radius_ladder() {
  std::vector<double> r{0.04};
  for (int i = 0; i < 6; ++i) r.push_back(0.5 * r.back());
  return r;
}

EquilateralLimit equilateral_limits(const MassSystem& sys, const EquilateralApproach& approach) {
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "equilateral limits need three bodies");
  if (approach.radii.empty()) throw Error(ErrorKind::InvalidArgument, "no radii given");
  const ShapeChart chart(sys);
  const double c = std::cos(approach.direction_angle);
  const double s = std::sin(approach.direction_angle);
  EquilateralLimit out;
  for (double r : approach.radii) {
    const PathRow row = path_row(chart, r * c, std::numbers::sqrt3 + r * s);
    out.values.push_back(row.f1_rho2_plus_f2);
  }
  if (is_halving(approach.radii)) {
    const numerics::Extrapolated e = numerics::richardson_halving(out.values, 1);
    out.limit = e.value;
    out.error_estimate = e.error_estimate;
  } else {
    out.limit = out.values.back();
    out.error_estimate = out.values.size() > 1
                             ? std::abs(out.values.back() - out.values[out.values.size() - 2])
                             : 0.0;
  }
  return out;
}

double equilateral_limit_vertical(const MassSystem& sys) {
  const double m1 = sys.mass(0), m2 = sys.mass(1), m3 = sys.mass(2);
  const double S = pair_sum(sys);
  const double a = sys.exponent();
  return 3.0 * (a + 2.0) * (m1 + m2) * S * S / (4.0 * m1 * m2 * m3 * (m1 * m1 + m1 * m2 + m2 * m2)) *
         std::pow(S / sys.total_mass(), 0.5 * a);
}

double equilateral_limit_horizontal(const MassSystem& sys) {
  const double m1 = sys.mass(0), m2 = sys.mass(1), m3 = sys.mass(2);
  const double S = pair_sum(sys);
  const double a = sys.exponent();
  const double den = m1 * m1 + m2 * m2 + 4.0 * m3 * m3 - m1 * m2 + 2.0 * m2 * m3 + 2.0 * m3 * m1;
  return 3.0 * (a + 2.0) * (m1 + m2 + 4.0 * m3) * S * S / (4.0 * m1 * m2 * m3 * den) *
         std::pow(S / sys.total_mass(), 0.5 * a);
}

}  // namespace tribody

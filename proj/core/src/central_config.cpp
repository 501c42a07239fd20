#include "tribody/central_config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tribody/error.hpp"
#include "tribody/shape_frame.hpp"
#include "tribody/numerics.hpp"

namespace tribody {

ShapeChart::ShapeChart(MassSystem sys) : sys_(std::move(sys)) {
  if (sys_.size() != 3) throw Error(ErrorKind::InvalidArgument, "the shape chart needs three bodies");
}

std::array<Planar, 3> ShapeChart::points(double x, double y) const {
  return {Planar{-1.0, 0.0}, Planar{1.0, 0.0}, Planar{x, y}};
}

double mu_on_chart(double x, double y, const ShapeChart& chart) {
  const auto pts = chart.points(x, y);
  return configurational_measure(pts, chart.system());
}

const char* to_string(CentralKind k) {
  switch (k) {
    case CentralKind::EquilateralPlus: return "EquilateralPlus";
    case CentralKind::EquilateralMinus: return "EquilateralMinus";
    case CentralKind::Rectilinear1: return "Rectilinear1";
    case CentralKind::Rectilinear2: return "Rectilinear2";
    case CentralKind::Rectilinear3: return "Rectilinear3";
  }
  return "Unknown";
}

const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Equilateral: return "Equilateral";
    case ShapeKind::RectilinearCC: return "RectilinearCC";
    case ShapeKind::OtherCollinear: return "OtherCollinear";
    case ShapeKind::Isosceles: return "Isosceles";
    case ShapeKind::Generic: return "Generic";
  }
  return "Unknown";
}

namespace {

CentralConfigResult finish(CentralKind kind, std::span<const Planar> pts, const MassSystem& sys) {
  const ShapeFrame f = frame_from_shape(pts, sys);
  CentralConfigResult r;
  r.kind = kind;
  r.shape = f.Q;
  r.mu_c = f.mu;
  r.rho_check = f.rho;
  return r;
}

}  // namespace

std::array<CentralConfigResult, 2> equilateral_config(const MassSystem& sys) {
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "central configurations need three bodies");
  const double h = std::numbers::sqrt3 / 2.0;
  const std::array<Planar, 3> plus{Planar{-0.5, 0.0}, Planar{0.5, 0.0}, Planar{0.0, h}};
  const std::array<Planar, 3> minus{Planar{-0.5, 0.0}, Planar{0.5, 0.0}, Planar{0.0, -h}};
  return {finish(CentralKind::EquilateralPlus, plus, sys),
          finish(CentralKind::EquilateralMinus, minus, sys)};
}

double euler_collinear_residual(double s, double mL, double mM, double mR, double a) {
  const double e = a + 1.0;
  const double AL = mM + mR / std::pow(1.0 + s, e);
  const double AM = -mL + mR / std::pow(s, e);
  const double AR = -mL / std::pow(1.0 + s, e) - mM / std::pow(s, e);
  return (AR - AM) - s * (AM - AL);
}

CentralConfigResult euler_collinear(const MassSystem& sys, int middle_index) {
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "central configurations need three bodies");
  if (middle_index < 1 || middle_index > 3) {
    throw Error(ErrorKind::InvalidArgument, "middle index must be 1, 2 or 3");
  }
  const std::size_t M = static_cast<std::size_t>(middle_index - 1);
  const std::size_t L = (M + 2) % 3;
  const std::size_t R = (M + 1) % 3;
  const double a = sys.exponent();
  const double mL = sys.mass(L), mM = sys.mass(M), mR = sys.mass(R);

  auto F = [&](double s) { return euler_collinear_residual(s, mL, mM, mR, a); };
  const auto brackets = numerics::scan_geometric(F, 1e-6, 1e6, 600);
  if (brackets.empty()) {
    throw Error(ErrorKind::RootNotBracketed, "collinear condition has no sign change on [1e-6, 1e6]");
  }
  const auto br = brackets.front();
  const double s = br.lo == br.hi ? br.lo : numerics::solve_bracketed(F, br.lo, br.hi, 1e-16);

  std::array<Planar, 3> pts{};
  pts[L] = {0.0, 0.0};
  pts[M] = {1.0, 0.0};
  pts[R] = {1.0 + s, 0.0};
  static constexpr CentralKind kinds[] = {CentralKind::Rectilinear1, CentralKind::Rectilinear2,
                                          CentralKind::Rectilinear3};
  CentralConfigResult r = finish(kinds[M], pts, sys);
  r.ratio = s;
  return r;
}

CriticalMeasures critical_measures(const MassSystem& sys) {
  CriticalMeasures c;
  for (int k = 1; k <= 3; ++k) c.mu_c[static_cast<std::size_t>(k - 1)] = euler_collinear(sys, k).mu_c;
  c.mu_eq = equilateral_config(sys)[0].mu_c;
  return c;
}

ShapeClass classify_shape(std::span<const Planar> points, const MassSystem& sys,
                          const ShapeThresholds& th) {
  const ShapeFrame f = frame_from_shape(points, sys);
  ShapeClass out;
  out.Delta = f.Delta;
  out.rho = f.rho;
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = std::abs(f.Q[i] - f.Q[(i + 1) % 3]);
  for (std::size_t i = 0; i < 3; ++i) out.gaps[i] = std::abs(r[i] - r[(i + 1) % 3]);

  if (std::abs(out.Delta) <= th.collinear) {
    out.kind = out.rho <= th.central ? ShapeKind::RectilinearCC : ShapeKind::OtherCollinear;
    return out;
  }
  const auto close = std::count_if(out.gaps.begin(), out.gaps.end(),
                                   [&](double g) { return g <= th.isosceles; });
  if (close >= 2) {
    out.kind = ShapeKind::Equilateral;
  } else if (close == 1) {
    out.kind = ShapeKind::Isosceles;
  } else {
    out.kind = ShapeKind::Generic;
  }
  return out;
}

}  // namespace tribody

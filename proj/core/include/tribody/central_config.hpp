#pragma once

#include <array>
#include <span>
#include <vector>

#include "tribody/dynamics.hpp"

namespace tribody {

/// Shapes of three bodies with q1 = (-1, 0), q2 = (1, 0) pinned and the free
/// vertex q3 = (x, y).
class ShapeChart {
 public:
  explicit ShapeChart(MassSystem sys);

  const MassSystem& system() const noexcept { return sys_; }
  std::array<Planar, 3> points(double x, double y) const;

 private:
  MassSystem sys_;
};

/// mu = U I^{a/2} of the chart shape. Throws Error(CollisionSingularity) on a
/// pinned vertex.
double mu_on_chart(double x, double y, const ShapeChart& chart);

enum class CentralKind { EquilateralPlus, EquilateralMinus, Rectilinear1, Rectilinear2, Rectilinear3 };

const char* to_string(CentralKind k);

struct CentralConfigResult {
  CentralKind kind = CentralKind::EquilateralPlus;
  std::vector<Planar> shape;  // barycentric, I = 1
  double mu_c = 0.0;
  double rho_check = 0.0;
  /// Rectilinear only: r(middle, right) / r(left, middle) in the solver's ordering.
  double ratio = 0.0;
};

/// Both orientations; Plus is counter-clockwise in body order.
std::array<CentralConfigResult, 2> equilateral_config(const MassSystem& sys);

/// Collinear central configuration with body `middle_index` (1-based) between
/// the other two. The left/middle/right ordering is cyclic:
/// middle 1 -> (3, 1, 2), middle 2 -> (1, 2, 3), middle 3 -> (2, 3, 1).
/// Throws Error(RootNotBracketed) if no ratio in [1e-6, 1e6] solves the
/// collinear condition, Error(InvalidArgument) for a bad index or n != 3.
CentralConfigResult euler_collinear(const MassSystem& sys, int middle_index);

/// Residual of the collinear condition at ratio s for a given ordering of
/// masses (left, middle, right).
double euler_collinear_residual(double s, double m_left, double m_middle, double m_right, double a);

struct CriticalMeasures {
  std::array<double, 3> mu_c{};  // indexed by middle body
  double mu_eq = 0.0;
};

CriticalMeasures critical_measures(const MassSystem& sys);

enum class ShapeKind { Equilateral, RectilinearCC, OtherCollinear, Isosceles, Generic };

const char* to_string(ShapeKind k);

struct ShapeClass {
  ShapeKind kind = ShapeKind::Generic;
  double Delta = 0.0;
  double rho = 0.0;
  /// |r01 - r12|, |r12 - r20|, |r20 - r01| on the I = 1 normalised shape.
  std::array<double, 3> gaps{};
};

struct ShapeThresholds {
  double collinear = 1e-9;
  double central = 1e-9;
  double isosceles = 1e-9;
};

/// Normalises the points to I = 1 first, so any scale or placement is accepted.
ShapeClass classify_shape(std::span<const Planar> points, const MassSystem& sys,
                          const ShapeThresholds& th = {});

// ---------------------------------------------------------------------------
// Level sets of mu over the chart.

struct ChartWindow {
  double x0 = -4.0, x1 = 4.0;
  double y0 = -4.0, y1 = 4.0;
};

struct ChartPoint {
  double x = 0.0;
  double y = 0.0;
};

struct CriticalPath {
  double level = 0.0;
  std::vector<std::vector<ChartPoint>> polylines;
  double refinement_tol = 1e-10;

  std::size_t point_count() const;
};

/// Guard radius around the pinned vertices.
inline constexpr double kChartGuard = 1e-3;

/// Marching squares on mu - level over a grid_n x grid_n lattice of cells;
/// each edge crossing is refined along the edge to |mu - level| <= 1e-10 level,
/// then chained into polylines. Throws Error(EmptyContour) if nothing crosses.
CriticalPath critical_path_contour(const ShapeChart& chart, double level, const ChartWindow& window,
                                   int grid_n);

}  // namespace tribody

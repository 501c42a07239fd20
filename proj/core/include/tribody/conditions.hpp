#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tribody/central_config.hpp"
#include "tribody/dynamics.hpp"
#include "tribody/numerics.hpp"

namespace tribody {

/// f1 = (a+2) m1 m2 m3 Delta^2 sum_l m_l r_jk^{-(a+4)} (r_kl^{-(a+2)} - r_lj^{-(a+2)})^2.
double f1_of(std::span<const Planar> Q, const MassSystem& sys);

/// f2 = (M / (m1 m2 m3)) (2 a mu - sum_{j<k} (m_j + m_k) r_jk^{-(a+2)}).
double f2_of(std::span<const Planar> Q, const MassSystem& sys, double mu);

struct ConditionInputs {
  std::vector<Planar> Q;  // I(Q) = 1 gauge
  double I_phys = 1.0;
  double B = 0.0;
  double C = 0.0;
  int epsilon = 1;
};

/// I^{(2-a)/2} + (m1 m2 m3 / M)^2 (B - C^2)(f1/rho^4 + f2/rho^2)
///   + 2 eps C sqrt(m1 m2 m3 (B - C^2) / M) / rho.
/// Zero is necessary for the candidate momenta to solve the equations of
/// motion. Throws Error(CentralConfiguration) at rho ~ 0 and
/// Error(SundmanViolation) if B < C^2 - 1e-9.
double condition_residual(const ConditionInputs& in, const MassSystem& sys, double mu);

struct EpsilonChoice {
  int epsilon = 1;
  bool dual = false;  // C == 0: both signs must be evaluated
};

/// eps = -sign(C), so that eps C = -|C|.
EpsilonChoice epsilon_rule(double C);

// ---------------------------------------------------------------------------
// Critical path through the collinear configuration at the chart origin.

struct SeriesFit {
  double c2 = 0.0;
  double c4 = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
};

/// Least squares y^2 = c2 x^2 + c4 x^4 over contour points with |x| <= max_x.
/// Throws Error(InsufficientPoints) with fewer than 20 such points or when one
/// sign of x is missing.
SeriesFit series_fit_critical_path(const CriticalPath& path, double max_x);

/// Least squares rho^2 = c2 x^2 + c4 x^4 over the same points, rho from the
/// I = 1 normalised shape with mu = U(Q).
SeriesFit rho2_fit_on_path(const CriticalPath& path, const ShapeChart& chart, double max_x);

/// Smallest y > 0 with mu(x, y) = level, found by a forward scan in y from 0
/// to 20 |x| and refined to machine precision.
double critical_path_y(const ShapeChart& chart, double level, double x);

struct PathRow {
  double x = 0.0;
  double y = 0.0;
  double rho2 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f1_over_rho2 = 0.0;
  double f1_rho2_plus_f2 = 0.0;  // f1/rho^2 + f2
  double f_over_rho4 = 0.0;      // f1/rho^4 + f2/rho^2
};

struct PathLimits {
  std::vector<PathRow> rows;
  /// Present when the x values halve from row to row; expansions are even in x.
  std::optional<numerics::Extrapolated> f_over_rho4;
  std::optional<numerics::Extrapolated> f1_rho2_plus_f2;
};

/// Evaluates the table along the critical path at `level` through the origin.
PathLimits series_limits_on_path(const ShapeChart& chart, double level,
                                 std::span<const double> x_values);

PathRow path_row(const ShapeChart& chart, double x, double y);

// ---------------------------------------------------------------------------
// Approach to the equilateral configuration q3 = (x, sqrt(3) + y).

struct EquilateralApproach {
  double direction_angle = 1.5707963267948966;  // radians; pi/2 is the vertical approach
  std::vector<double> radii;                    // halving ladder
};

/// Radii 0.04, 0.02, ..., halved six times.
std::vector<double> default_radius_ladder();

struct EquilateralLimit {
  std::vector<double> values;  // f1/rho^2 + f2 at each radius
  double limit = 0.0;
  double error_estimate = 0.0;
};

/// Convergence is linear in the radius, so the extrapolation uses h^1 steps.
EquilateralLimit equilateral_limits(const MassSystem& sys, const EquilateralApproach& approach);

/// Closed-form limits of f1/rho^2 (f2 vanishes at the equilateral shape) for
/// the vertical (x = 0) and horizontal (y = 0) approaches.
double equilateral_limit_vertical(const MassSystem& sys);
double equilateral_limit_horizontal(const MassSystem& sys);

}  // namespace tribody

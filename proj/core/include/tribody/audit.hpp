#pragma once

#include <optional>
#include <vector>

#include "tribody/events.hpp"
#include "tribody/integrate.hpp"

namespace tribody {

enum class Verdict { Homographic, NonHomographicCandidateRejected, NotConstantMeasure };

const char* to_string(Verdict v);

struct AuditThresholds {
  double mu_drift = 1e-6;     // relative
  double sundman_gap = 1e-8;  // times max(1, B)
  double homography = 1e-6;
};

struct ConjectureReport {
  double mu_mean = 0.0;
  double mu_drift = 0.0;  // (max - min) / |mean|
  double B_mean = 0.0;
  double B_drift = 0.0;   // (max - min) / max(1, |mean|)
  double C = 0.0;
  double sundman_gap = 0.0;  // B_mean - C^2
  /// Empty for a >= 2, where the categories are not defined.
  std::optional<OrbitCategory> category;
  double homography_score = 0.0;  // max |P_k| / (sqrt(m_k) max(1, sqrt(B)))
  double rho_max = 0.0;
  EventScan events;
  int epsilon = 1;
  bool dual_epsilon = false;
  /// One per frame with rho above the central threshold and B - C^2 above the
  /// Sundman threshold.
  std::vector<double> condition_residuals;
  std::vector<double> condition_residuals_flipped;  // -epsilon, filled when dual_epsilon
  Verdict verdict = Verdict::NotConstantMeasure;
};

ConjectureReport audit(const Trajectory& traj, const AuditThresholds& th = {});

struct AsymptoticsEstimate {
  double tau_infinity = 0.0;
  double I_growth_exponent = 0.0;  // p in sqrt(I) ~ c / (tau_inf - tau)^p
  double rho_slope = 0.0;          // least-squares d rho / d tau over the fit window
  std::size_t fit_points = 0;
};

/// For escapes with H >= 0. The remaining fictitious time is
///   int_{I_end}^inf dI / (I sqrt(8 H I + 8 mu I^{(2-a)/2} - 4 B)),
/// computed with w = I^{-1/2} as 2 int_0^{w_end} dw / sqrt(8 H + 8 mu w^a - 4 B w^2).
/// The exponent is fitted over samples with I >= I_end / 100.
/// Throws Error(NotAsymptotic) if I(t_end) < 100 I(0), Error(InvalidArgument) if H < 0.
AsymptoticsEstimate asymptotics_check(const Trajectory& traj);

}  // namespace tribody

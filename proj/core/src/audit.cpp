#include "tribody/audit.hpp"

#include <algorithm>
#include <cmath>

#include "tribody/conditions.hpp"
#include "tribody/error.hpp"
#include "tribody/numerics.hpp"

namespace tribody {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Homographic: return "Homographic";
    case Verdict::NonHomographicCandidateRejected: return "NonHomographicCandidateRejected";
    case Verdict::NotConstantMeasure: return "NotConstantMeasure";
  }
  return "Unknown";
}

ConjectureReport audit(const Trajectory& traj, const AuditThresholds& th) {
  const MassSystem& sys = traj.system;
  if (traj.samples.empty()) throw Error(ErrorKind::InvalidArgument, "audit of an empty trajectory");
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "audit needs three bodies");

  const std::vector<ShapeFrame> frames = to_shape_frames(traj);
  ConjectureReport r;

  double mu_min = frames.front().mu, mu_max = mu_min;
  double B_min = frames.front().B, B_max = B_min;
  double C_sum = 0.0;
  for (const auto& f : frames) {
    r.mu_mean += f.mu;
    r.B_mean += f.B;
    C_sum += f.C;
    mu_min = std::min(mu_min, f.mu);
    mu_max = std::max(mu_max, f.mu);
    B_min = std::min(B_min, f.B);
    B_max = std::max(B_max, f.B);
  }
  const auto n = static_cast<double>(frames.size());
  r.mu_mean /= n;
  r.B_mean /= n;
  r.C = C_sum / n;
  r.mu_drift = (mu_max - mu_min) / std::abs(r.mu_mean);
  r.B_drift = (B_max - B_min) / std::max(1.0, std::abs(r.B_mean));
  r.sundman_gap = r.B_mean - r.C * r.C;

  if (sys.exponent() < 2.0) {
    r.category = categorize_orbit(scalar_diagnostics(traj.samples.front().phase, sys), sys);
  }

  const double B_scale = std::max(1.0, std::sqrt(std::max(r.B_mean, 0.0)));
  for (const auto& f : frames) {
    r.rho_max = std::max(r.rho_max, f.rho);
    for (std::size_t k = 0; k < 3; ++k) {
      r.homography_score = std::max(r.homography_score, std::abs(f.P[k]) / (std::sqrt(sys.mass(k)) * B_scale));
    }
  }

  r.events = event_finder(frames, sys, trajectory_frame_at(traj));

  const EpsilonChoice eps = epsilon_rule(r.C);
  r.epsilon = eps.epsilon;
  r.dual_epsilon = eps.dual;

  if (r.mu_drift > th.mu_drift) {
    r.verdict = Verdict::NotConstantMeasure;
    return r;
  }

  // Below the Sundman threshold the candidate momenta vanish and the condition is void.
  const double gap_floor = th.sundman_gap * std::max(1.0, r.B_mean);
  for (const auto& f : frames) {
    if (f.rho <= central_rho_threshold(sys, f.mu) || f.B - f.C * f.C <= gap_floor) continue;
    ConditionInputs in{f.Q, f.I_phys, f.B, f.C, eps.epsilon};
    r.condition_residuals.push_back(condition_residual(in, sys, f.mu));
    if (eps.dual) {
      in.epsilon = -eps.epsilon;
      r.condition_residuals_flipped.push_back(condition_residual(in, sys, f.mu));
    }
  }

  const bool homographic = r.sundman_gap <= th.sundman_gap * std::max(1.0, r.B_mean) &&
                           r.homography_score <= th.homography;
  r.verdict = homographic ? Verdict::Homographic : Verdict::NonHomographicCandidateRejected;
  return r;
}

AsymptoticsEstimate asymptotics_check(const Trajectory& traj) {
  const MassSystem& sys = traj.system;
  if (traj.samples.size() < 3) throw Error(ErrorKind::NotAsymptotic, "too few samples");
  const ScalarDiagnostics first = scalar_diagnostics(traj.samples.front().phase, sys);
  const ScalarDiagnostics last = scalar_diagnostics(traj.samples.back().phase, sys);
  if (first.H < -1e-12 * std::max(1.0, first.U)) throw Error(ErrorKind::InvalidArgument, "asymptotics need H >= 0");
  if (last.I < 100.0 * first.I) {
    throw Error(ErrorKind::NotAsymptotic, "I(t_end) < 100 I(0): the run has not left the core");
  }

  const double a = sys.exponent();
  const double H = std::max(first.H, 0.0), mu = last.mu, B = last.B;
  const double w_end = 1.0 / std::sqrt(last.I);
  const double tail = numerics::integrate_tanh_sinh(
      [&](double w) { return 2.0 / std::sqrt(8.0 * H + 8.0 * mu * std::pow(w, a) - 4.0 * B * w * w); },
      0.0, w_end, 1e-13);

  AsymptoticsEstimate out;
  out.tau_infinity = traj.samples.back().tau + tail;

  std::vector<double> log_gap, log_root, taus, rhos;
  for (const auto& s : traj.samples) {
    const double I = moment_of_inertia(s.phase.q, sys);
    if (I < last.I / 100.0) continue;
    const double gap = out.tau_infinity - s.tau;
    if (!(gap > 0.0)) continue;
    log_gap.push_back(std::log(gap));
    log_root.push_back(0.5 * std::log(I));
    taus.push_back(s.tau);
    rhos.push_back(frame_from_state(s, sys).rho);
  }
  out.fit_points = log_gap.size();
  if (out.fit_points < 3) throw Error(ErrorKind::InsufficientPoints, "too few samples in the fit window");

  auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const auto m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    const double den = m * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
  };
  out.I_growth_exponent = -slope(log_gap, log_root);
  out.rho_slope = slope(taus, rhos);
  return out;
}

}  // namespace tribody

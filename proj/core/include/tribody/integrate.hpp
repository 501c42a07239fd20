#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tribody/dynamics.hpp"

namespace tribody {

/// Phase-space point plus the two quadratures carried along with it:
/// the fictitious time tau = int dt / I and the rotation phase
/// theta = int C dt / I used to quotient out the overall rotation.
struct AugmentedState {
  PhaseState phase;
  double tau = 0.0;
  double theta = 0.0;
};

enum class Termination { TimeLimit, Collision, Escape, ToleranceFailure };

const char* to_string(Termination t);

struct Trajectory {
  MassSystem system;
  std::vector<AugmentedState> samples;
  Termination termination = Termination::TimeLimit;
};

struct IntegratorControls {
  double t_end = 1.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = std::numeric_limits<double>::infinity();
  /// Collision cutoff: min r_jk below collision_radius * sqrt(I(0)).
  double collision_radius = 1e-6;
  /// Escape cutoff: I above escape_factor * I(0).
  double escape_factor = 1e6;
  /// Record every n-th accepted step (the first and last samples are always kept).
  std::size_t sample_stride = 1;
  std::size_t max_steps = 50'000'000;
};

/// Replaces the physical force law, e.g. with a zero field in tests.
using ForceModel = std::function<std::vector<Planar>(std::span<const Planar>, const MassSystem&)>;

/// Adaptive Dormand-Prince 5(4) integration of
///   dq/dt = p/m, dp/dt = g(q), dtau/dt = 1/I, dtheta/dt = C/I
/// from initial.t to controls.t_end (which may lie in the past).
/// Collision and escape are located on the dense-output interpolant and end
/// the run normally; a collapsing step size ends it with ToleranceFailure.
/// Throws Error(PreconditionViolated) if the initial state is not barycentric.
Trajectory integrate(const PhaseState& initial, const MassSystem& sys,
                     const IntegratorControls& controls, const ForceModel& force = {});

/// Single-shot propagation of an augmented state to t_target with the same
/// scheme (no sampling, no termination events).
AugmentedState propagate(const AugmentedState& from, const MassSystem& sys, double t_target,
                         const IntegratorControls& controls = {}, const ForceModel& force = {});

/// `delta` shrunk by the two-body timescale r_jk^{(a+2)/2} / sqrt(m_j + m_k)
/// of the closest pair when that is below one, so finite-difference checks keep
/// resolving close encounters.
double local_difference_step(std::span<const Planar> q, const MassSystem& sys, double delta);

/// Second time derivative of I at each sample (every `stride`-th, interior to
/// the run) by central differences, compared with 4H + 2(2-a)U. I is split into
/// Jacobi terms around the closest pair, m_in |r_in|^2 + m_out |r_out|^2, and
/// each term is differenced with `delta` times its own two-body timescale
/// (capped at delta), so close encounters neither swamp the outer term with
/// round-off nor leave the inner one unresolved. Neighbours come from short
/// propagations off the sample. Each entry is normalised by
/// max(1, |4H| + |2(2-a)U|). Three bodies only.
std::vector<double> lagrange_jacobi_residuals(const Trajectory& traj, double delta,
                                              std::size_t stride = 1);

// ---------------------------------------------------------------------------
// Moment-of-inertia first integral:  (1/2)(dI/dt)^2 + Phi(I) = -2B,
// Phi(I) = -4 H I - 4 mu I^{(2-a)/2}.

struct PhiProfile {
  double H = 0.0;
  double mu = 0.0;
  double a = 1.0;
  double B = 0.0;
  std::optional<double> I_min;
  std::optional<double> I_max;
};

/// Throws Error(DegenerateExponent) for a == 2 and Error(InvalidArgument) for I <= 0.
double phi_of_I(double I, double H, double mu, double a);
double phi_derivative(double I, double H, double mu, double a);

struct TurningPoints {
  std::optional<double> I_min;
  std::optional<double> I_max;
  bool double_root = false;  // I_min == I_max at a tangency (circular motion)
  bool no_root = false;      // Phi + 2B never changes sign on the scanned range
};

/// Roots of Phi(I) = -2B on the geometric range [1e-12, 1e12] * I_ref.
/// B = 0 with a < 2 reports I_min = 0 (the total collision).
/// A missing root is reported through `no_root`, not thrown.
TurningPoints turning_points(const PhiProfile& profile, double I_ref = 1.0);

/// Convenience: fill I_min / I_max of a profile.
PhiProfile with_turning_points(PhiProfile profile, double I_ref = 1.0);

enum class OrbitCategory { TotalCollision, Unbounded, Oscillatory };

const char* to_string(OrbitCategory c);

/// (a) B ~ 0, (b) B > 0 and H >= 0, (c) B > 0 and H < 0.
/// Throws Error(DegenerateExponent) when a >= 2.
OrbitCategory categorize_orbit(const ScalarDiagnostics& diag, const MassSystem& sys);

}  // namespace tribody

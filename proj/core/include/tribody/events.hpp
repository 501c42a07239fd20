#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "tribody/central_config.hpp"
#include "tribody/shape_frame.hpp"

namespace tribody {

/// A zero of dr_jk/dtau for one pair.
struct ShapeEvent {
  double tau0 = 0.0;
  BodyPair pair{0, 1};
  ShapeClass shape;
};

struct EventScan {
  std::vector<ShapeEvent> events;
  /// Pairs (body_pairs(3) order) whose dr/dtau stays below the zero tolerance
  /// over the whole run; no discrete events are reported for them.
  std::array<bool, 3> zero_channel{};
};

/// Frame at an arbitrary fictitious time inside the sampled range.
using FrameAt = std::function<ShapeFrame(double tau)>;

struct EventOptions {
  double zero_tol = 1e-7;  // |dr/dtau| below this on every frame marks a zero channel
  double tau_tol = 1e-10;
  ShapeThresholds thresholds{};
};

/// Sign changes of dr_jk/dtau (general route) between consecutive frames,
/// refined by bisection in tau when `frame_at` is given (otherwise the nearer
/// frame is used), and classified with classify_shape.
EventScan event_finder(std::span<const ShapeFrame> frames, const MassSystem& sys,
                       const FrameAt& frame_at = {}, const EventOptions& options = {});

/// Refinement callback for frames of an integrated trajectory: solves
/// tau(t) = tau by Newton iteration over short propagations.
FrameAt trajectory_frame_at(const Trajectory& traj);

/// Shape flow dQ_k/dtau = P_k / m_k with P the candidate momenta at fixed
/// kappa and epsilon, integrated by classical RK4 with `steps` equal steps.
/// Returns steps + 1 frames (tau = 0 ... tau_end) with I(Q) = 1.
std::vector<ShapeFrame> candidate_flow(std::span<const Planar> Q0, const MassSystem& sys,
                                          double kappa, int epsilon, double tau_end, int steps);

/// Refinement callback for candidate_flow output.
FrameAt candidate_flow_frame_at(std::vector<ShapeFrame> frames, const MassSystem& sys,
                                double kappa, int epsilon);

}  // namespace tribody

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tribody/central_config.hpp"
#include "tribody/events.hpp"
#include "tribody/shape_frame.hpp"
#include "tribody/presets.hpp"

using namespace tribody;

namespace {

MassSystem equal() { return MassSystem({1.0, 1.0, 1.0}, 1.0); }

Trajectory run(const PhaseState& s, const MassSystem& sys, double t_end) {
  IntegratorControls c;
  c.t_end = t_end;
  return integrate(s, sys, c);
}

// Bodies 0 and 1 mirror each other across the y-axis and body 2 stays on it.
PhaseState mirror_state(const MassSystem& sys) {
  PhaseState s;
  s.q = {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.5}};
  s.p = {{-0.6, 0.0}, {0.6, 0.0}, {0.0, 0.0}};
  return reduce_to_barycenter(s, sys);
}

}  // namespace

TEST(EventFinder, HomographicOrbitIsAZeroChannel) {
  const auto sys = equal();
  const auto traj = run(lagrange_circular(sys), sys, 2 * 2 * std::numbers::pi / std::numbers::sqrt3);
  const auto frames = to_shape_frames(traj);
  const auto scan = event_finder(frames, sys, trajectory_frame_at(traj));
  EXPECT_TRUE(scan.events.empty());
  for (bool z : scan.zero_channel) EXPECT_TRUE(z);
}

TEST(EventFinder, MirrorSymmetricOrbitGivesIsoscelesEvents) {
  const auto sys = equal();
  const auto traj = run(mirror_state(sys), sys, 3.0);
  ASSERT_EQ(traj.termination, Termination::TimeLimit);
  const auto frames = to_shape_frames(traj);
  const auto scan = event_finder(frames, sys, trajectory_frame_at(traj));
  ASSERT_FALSE(scan.events.empty());
  for (const auto& e : scan.events) {
    EXPECT_TRUE(e.shape.kind == ShapeKind::Isosceles || e.shape.kind == ShapeKind::OtherCollinear ||
                e.shape.kind == ShapeKind::RectilinearCC)
        << to_string(e.shape.kind);
    EXPECT_GE(e.tau0, frames.front().tau);
    EXPECT_LE(e.tau0, frames.back().tau);
  }
  for (bool z : scan.zero_channel) EXPECT_FALSE(z);
}

TEST(EventFinder, RefinedEventsAreZerosOfTheRate) {
  const auto sys = equal();
  const auto traj = run(mirror_state(sys), sys, 3.0);
  const auto frame_at = trajectory_frame_at(traj);
  const auto scan = event_finder(to_shape_frames(traj), sys, frame_at);
  const auto pairs = body_pairs(3);
  for (const auto& e : scan.events) {
    const auto f = frame_at(e.tau0);
    const auto rates = dr_dtau_general(f.Q, f.P, sys);
    for (std::size_t i = 0; i < 3; ++i) {
      if (pairs[i].j == e.pair.j && pairs[i].k == e.pair.k) {
        EXPECT_LE(std::abs(rates[i]), 1e-6);
      }
    }
  }
}

TEST(EventFinder, CandidateFlowThroughCollinearShape) {
  const auto sys = equal();
  const auto start = frame_from_shape(ShapeChart(sys).points(0.5, 0.05), sys);
  const auto flow = candidate_flow(start.Q, sys, 1.0, -1, 0.2, 200);
  ASSERT_LT(flow.back().Delta * flow.front().Delta, 0.0);
  const auto scan = event_finder(flow, sys, candidate_flow_frame_at(flow, sys, 1.0, -1));
  ASSERT_FALSE(scan.events.empty());
  for (const auto& e : scan.events) {
    EXPECT_EQ(e.shape.kind, ShapeKind::OtherCollinear);
    EXPECT_LE(std::abs(e.shape.Delta), 1e-9);
  }
}

TEST(EventFinder, WithoutRefinementUsesNearestFrame) {
  const auto sys = equal();
  const auto start = frame_from_shape(ShapeChart(sys).points(0.5, 0.05), sys);
  const auto flow = candidate_flow(start.Q, sys, 1.0, -1, 0.2, 200);
  const auto scan = event_finder(flow, sys);
  ASSERT_FALSE(scan.events.empty());
  const double dtau = 0.2 / 200;
  for (const auto& e : scan.events) {
    EXPECT_NEAR(e.tau0, 0.0154087, dtau);
  }
}

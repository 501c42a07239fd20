#include "tribody/events.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "tribody/error.hpp"

namespace tribody {

namespace {

double channel(const ShapeFrame& f, const MassSystem& sys, std::size_t i) {
  return dr_dtau_general(f.Q, f.P, sys)[i];
}

ShapeFrame flow_frame(std::vector<Planar> Q, const MassSystem& sys, double kappa, int epsilon,
                         double tau) {
  ShapeFrame f;
  f.Q = std::move(Q);
  refresh_shape_quantities(f, sys);
  f.P = candidate_momenta(f.Q, sys, f.mu, kappa, epsilon);
  f.tau = tau;
  f.kappa = kappa;
  return f;
}

std::vector<Planar> flow_rate(std::span<const Planar> Q, const MassSystem& sys, double kappa,
                              int epsilon) {
  const double mu = potential_energy(Q, sys);
  std::vector<Planar> v = candidate_momenta(Q, sys, mu, kappa, epsilon);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] /= sys.mass(k);
  return v;
}

std::vector<Planar> rk4_step(std::span<const Planar> Q, const MassSystem& sys, double kappa,
                             int epsilon, double h) {
  const std::size_t n = Q.size();
  auto axpy = [n](std::span<const Planar> x, double s, const std::vector<Planar>& y) {
    std::vector<Planar> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = x[k] + s * y[k];
    return out;
  };
  const auto k1 = flow_rate(Q, sys, kappa, epsilon);
  const auto k2 = flow_rate(axpy(Q, 0.5 * h, k1), sys, kappa, epsilon);
  const auto k3 = flow_rate(axpy(Q, 0.5 * h, k2), sys, kappa, epsilon);
  const auto k4 = flow_rate(axpy(Q, h, k3), sys, kappa, epsilon);
  std::vector<Planar> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = Q[k] + h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  return out;
}

}  // namespace

EventScan event_finder(std::span<const ShapeFrame> frames, const MassSystem& sys,
                       const FrameAt& frame_at, const EventOptions& options) {
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "event finder needs three bodies");
  EventScan scan;
  if (frames.empty()) return scan;

  std::vector<std::array<double, 3>> values;
  values.reserve(frames.size());
  for (const auto& f : frames) values.push_back(dr_dtau_general(f.Q, f.P, sys));

  const auto pairs = body_pairs(3);
  for (std::size_t i = 0; i < 3; ++i) {
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, std::abs(v[i]));
    scan.zero_channel[i] = peak <= options.zero_tol;
    if (scan.zero_channel[i]) continue;

    for (std::size_t s = 0; s + 1 < frames.size(); ++s) {
      const double v0 = values[s][i];
      const double v1 = values[s + 1][i];
      ShapeFrame at;
      if (v0 == 0.0) {
        at = frames[s];
      } else if (v1 == 0.0 || std::signbit(v0) == std::signbit(v1)) {
        continue;
      } else if (frame_at) {
        double lo = frames[s].tau, hi = frames[s + 1].tau;
        const bool lo_negative = std::signbit(v0);
        while (std::abs(hi - lo) > options.tau_tol * std::max(1.0, std::abs(lo))) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          const double vm = channel(frame_at(mid), sys, i);
          if (vm == 0.0) {
            lo = hi = mid;
            break;
          }
          if (std::signbit(vm) == lo_negative) lo = mid; else hi = mid;
        }
        at = frame_at(0.5 * (lo + hi));
      } else {
        at = std::abs(v0) <= std::abs(v1) ? frames[s] : frames[s + 1];
        at.tau = frames[s].tau + (frames[s + 1].tau - frames[s].tau) * v0 / (v0 - v1);
      }
      scan.events.push_back({at.tau, pairs[i], classify_shape(at.Q, sys, options.thresholds)});
    }
  }
  std::sort(scan.events.begin(), scan.events.end(),
            [](const ShapeEvent& x, const ShapeEvent& y) { return x.tau0 < y.tau0; });
  return scan;
}

FrameAt trajectory_frame_at(const Trajectory& traj) {
  auto shared = std::make_shared<const Trajectory>(traj);
  return [shared](double tau) {
    const auto& samples = shared->samples;
    const MassSystem& sys = shared->system;
    auto it = std::upper_bound(samples.begin(), samples.end(), tau,
                               [](double v, const AugmentedState& s) { return v < s.tau; });
    if (it != samples.begin()) --it;
    const AugmentedState& base = *it;

    IntegratorControls c;
    c.rel_tol = 1e-13;
    c.abs_tol = 1e-15;
    AugmentedState cur = base;
    for (int iter = 0; iter < 30; ++iter) {
      const double miss = tau - cur.tau;
      if (std::abs(miss) <= 1e-14 * std::max(1.0, std::abs(tau))) break;
      const double I = moment_of_inertia(cur.phase.q, sys);
      cur = propagate(base, sys, cur.phase.t + I * miss, c);
    }
    return frame_from_state(cur, sys);
  };
}

std::vector<ShapeFrame> candidate_flow(std::span<const Planar> Q0, const MassSystem& sys,
                                          double kappa, int epsilon, double tau_end, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "candidate_flow needs steps >= 1");
  const ShapeFrame start = frame_from_shape(Q0, sys);
  std::vector<ShapeFrame> out;
  out.push_back(flow_frame(start.Q, sys, kappa, epsilon, 0.0));
  const double h = tau_end / steps;
  std::vector<Planar> Q = start.Q;
  for (int s = 1; s <= steps; ++s) {
    Q = rk4_step(Q, sys, kappa, epsilon, h);
    out.push_back(flow_frame(Q, sys, kappa, epsilon, s * h));
  }
  return out;
}

FrameAt candidate_flow_frame_at(std::vector<ShapeFrame> frames, const MassSystem& sys,
                                double kappa, int epsilon) {
  auto shared = std::make_shared<const std::vector<ShapeFrame>>(std::move(frames));
  return [shared, sys, kappa, epsilon](double tau) {
    const auto& fr = *shared;
    auto it = std::upper_bound(fr.begin(), fr.end(), tau,
                               [](double v, const ShapeFrame& f) { return v < f.tau; });
    if (it != fr.begin()) --it;
    // One RK4 step from the sample below; the flow's own step is larger, so
    // this is at least as accurate as the stored frames.
    const std::vector<Planar> Q = rk4_step(it->Q, sys, kappa, epsilon, tau - it->tau);
    return flow_frame(Q, sys, kappa, epsilon, tau);
  };
}

}  // namespace tribody

#include "tribody/shape_frame.hpp"

#include <algorithm>
#include <cmath>

#include "tribody/error.hpp"

namespace tribody {

namespace {

void require_three(std::span<const Planar> Q) {
  if (Q.size() != 3) throw Error(ErrorKind::InvalidArgument, "shape quantities need three bodies");
}

// Pair i of body_pairs(3) is (i, i+1), and l = i+2 is the opposite body.
constexpr std::size_t pair_j(std::size_t i) { return i; }
constexpr std::size_t pair_k(std::size_t i) { return (i + 1) % 3; }
constexpr std::size_t opposite(std::size_t i) { return (i + 2) % 3; }

IntegratorControls tight_controls() {
  IntegratorControls c;
  c.rel_tol = 1e-13;
  c.abs_tol = 1e-15;
  return c;
}

}  // namespace

double oriented_area2(std::span<const Planar> Q) {
  require_three(Q);
  return wedge(Q[0], Q[1]) + wedge(Q[1], Q[2]) + wedge(Q[2], Q[0]);
}

std::vector<Planar> G_of_Q(std::span<const Planar> Q, const MassSystem& sys, double mu) {
  std::vector<Planar> G = forces(Q, sys);
  const double a = sys.exponent();
  for (std::size_t k = 0; k < G.size(); ++k) G[k] += a * mu * sys.mass(k) * Q[k];
  return G;
}

RhoRoutes rho_of(std::span<const Planar> Q, const MassSystem& sys, double mu) {
  require_three(Q);
  const std::vector<Planar> G = G_of_Q(Q, sys, mu);
  const double M = sys.total_mass();
  const double m123 = sys.mass_product();
  const double a = sys.exponent();

  RhoRoutes out;
  double s = 0.0;
  for (std::size_t l = 0; l < 3; ++l) s += norm2(G[l]) / sys.mass(l);
  out.rho2_G = m123 / M * s;
  out.rho = std::sqrt(out.rho2_G);

  double scale = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = pair_j(i), k = pair_k(i);
    const double r = std::abs(Q[j] - Q[k]);
    out.E[opposite(i)] = sys.mass(j) * sys.mass(k) * (std::pow(r, -(a + 2.0)) - a * mu / M);
  }
  for (double e : out.E) scale += e * e;
  out.rho2_E = -(out.E[0] * out.E[1] + out.E[1] * out.E[2] + out.E[2] * out.E[0]);
  if (out.rho2_E < -1e-12 * std::max(1.0, scale)) {
    throw Error(ErrorKind::NegativeRhoSquared,
                "rho^2 from E is negative; mu does not match the shape or I(Q) != 1");
  }
  return out;
}

double kappa_of(double B, double C, const MassSystem& sys) {
  const double gap = B - C * C;
  if (gap < -1e-9) throw Error(ErrorKind::SundmanViolation, "B < C^2");
  return std::sqrt(sys.mass_product() * std::max(gap, 0.0) / sys.total_mass());
}

double central_rho_threshold(const MassSystem& sys, double mu) {
  return 1e-12 * std::max(1.0, sys.exponent() * mu);
}

void refresh_shape_quantities(ShapeFrame& f, const MassSystem& sys) {
  f.mu = potential_energy(f.Q, sys);
  if (sys.size() != 3) return;
  const RhoRoutes r = rho_of(f.Q, sys, f.mu);
  f.G = G_of_Q(f.Q, sys, f.mu);
  f.rho = r.rho;
  f.E = r.E;
  f.Delta = oriented_area2(f.Q);
}

ShapeFrame frame_from_state(const AugmentedState& s, const MassSystem& sys) {
  const PhaseState& ph = s.phase;
  const std::size_t n = sys.size();
  if (ph.q.size() != n || ph.p.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "state: body count does not match the mass system");
  }
  const double I = moment_of_inertia(ph.q, sys);
  if (!(I > 0.0)) throw Error(ErrorKind::ZeroInertia, "sample with I <= 0");

  double qp = 0.0, twoT = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    qp += dot(ph.q[k], ph.p[k]);
    twoT += norm2(ph.p[k]) / sys.mass(k);
  }
  const double C = angular_momentum(ph.q, ph.p);
  const double dIdt = 2.0 * qp;

  ShapeFrame f;
  f.t = ph.t;
  f.tau = s.tau;
  f.theta = s.theta;
  f.I_phys = I;
  f.dIdt = dIdt;
  f.C = C;
  f.B = I * twoT - qp * qp;

  const Planar rot = std::polar(1.0, -s.theta);
  const double root = std::sqrt(I);
  f.Q.resize(n);
  f.P.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Planar v = ph.p[k] / sys.mass(k);
    const Planar dQ = rot * (v - (dIdt / (2.0 * I)) * ph.q[k] - (C / I) * kI * ph.q[k]) / root;
    f.Q[k] = rot * ph.q[k] / root;
    f.P[k] = I * sys.mass(k) * dQ;
  }
  refresh_shape_quantities(f, sys);
  if (n == 3) f.kappa = std::sqrt(sys.mass_product() * std::max(f.B - C * C, 0.0) / sys.total_mass());
  return f;
}

std::vector<ShapeFrame> to_shape_frames(const Trajectory& traj) {
  std::vector<ShapeFrame> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) out.push_back(frame_from_state(s, traj.system));
  return out;
}

ShapeFrame frame_from_shape(std::span<const Planar> points, const MassSystem& sys) {
  if (points.size() != sys.size()) {
    throw Error(ErrorKind::InvalidArgument, "shape: body count does not match the mass system");
  }
  PhaseState st;
  st.q.assign(points.begin(), points.end());
  st.p.assign(points.size(), Planar{});
  st = reduce_to_barycenter(st, sys);
  const double I = moment_of_inertia(st.q, sys);
  if (!(I > 0.0)) throw Error(ErrorKind::ZeroInertia, "shape with all points coincident");

  ShapeFrame f;
  f.Q.resize(points.size());
  f.P.assign(points.size(), Planar{});
  for (std::size_t k = 0; k < points.size(); ++k) f.Q[k] = st.q[k] / std::sqrt(I);
  refresh_shape_quantities(f, sys);
  return f;
}

double shape_kinetic(const ShapeFrame& frame, const MassSystem& sys) {
  double s = 0.0;
  for (std::size_t k = 0; k < frame.P.size(); ++k) s += norm2(frame.P[k]) / sys.mass(k);
  return s;
}

Similarity similarity_factor(std::span<const Planar> xi, std::span<const Planar> eta,
                             const MassSystem& sys) {
  require_three(xi);
  require_three(eta);
  Planar inner{}, total{};
  double cross_scale = 0.0, eta_max = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    inner += std::conj(xi[k]) * eta[k];
    total += eta[k];
    cross_scale += std::abs(xi[k]) * std::abs(eta[k]);
    eta_max = std::max(eta_max, std::abs(eta[k]));
  }
  const double tol_inner = 1e-10 * std::max(1.0, cross_scale);
  if (std::abs(inner.real()) > tol_inner || std::abs(inner.imag()) > tol_inner) {
    throw Error(ErrorKind::PreconditionViolated, "sum conj(xi) eta is not zero");
  }
  if (std::abs(total) > 1e-10 * std::max(1.0, eta_max)) {
    throw Error(ErrorKind::PreconditionViolated, "sum eta is not zero");
  }
  double spread = 0.0;
  for (auto [j, k] : body_pairs(3)) spread += sys.mass(j) * sys.mass(k) * norm2(xi[j] - xi[k]);
  if (!(spread > 0.0)) throw Error(ErrorKind::DegenerateShape, "all xi coincide");

  // Divide by the longest side to keep the quotient well conditioned.
  std::size_t best = 0;
  double best_len = -1.0;
  for (std::size_t l = 0; l < 3; ++l) {
    const double len = std::abs(xi[(l + 1) % 3] - xi[(l + 2) % 3]);
    if (len > best_len) {
      best_len = len;
      best = l;
    }
  }
  Similarity out;
  out.zeta = eta[best] / (std::conj(xi[(best + 1) % 3]) - std::conj(xi[(best + 2) % 3]));
  for (std::size_t l = 0; l < 3; ++l) {
    const Planar pred = out.zeta * (std::conj(xi[(l + 1) % 3]) - std::conj(xi[(l + 2) % 3]));
    out.residual = std::max(out.residual, std::abs(eta[l] - pred));
  }
  return out;
}

std::vector<Planar> candidate_momenta(std::span<const Planar> Q, const MassSystem& sys, double mu,
                                      double kappa, int epsilon) {
  require_three(Q);
  if (epsilon != 1 && epsilon != -1) throw Error(ErrorKind::InvalidArgument, "epsilon must be +1 or -1");
  const RhoRoutes r = rho_of(Q, sys, mu);
  if (r.rho <= central_rho_threshold(sys, mu)) {
    throw Error(ErrorKind::CentralConfiguration, "candidate momenta are undefined at rho = 0");
  }
  std::vector<Planar> P = G_of_Q(Q, sys, mu);
  const double scale = epsilon * kappa / r.rho;
  for (auto& v : P) v *= scale * kI;
  return P;
}

std::array<double, 3> dr_dtau_general(std::span<const Planar> Q, std::span<const Planar> P,
                                      const MassSystem& sys) {
  require_three(Q);
  require_three(P);
  const double M = sys.total_mass();
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = pair_j(i), k = pair_k(i), l = opposite(i);
    const double r = std::abs(Q[j] - Q[k]);
    out[i] = -M * dot(Q[l], P[l]) / (sys.mass(j) * sys.mass(k) * r);
  }
  return out;
}

std::array<double, 3> dr_dtau_candidate(std::span<const Planar> Q, const MassSystem& sys,
                                        double mu, double kappa, int epsilon) {
  require_three(Q);
  const RhoRoutes r = rho_of(Q, sys, mu);
  if (r.rho <= central_rho_threshold(sys, mu)) {
    throw Error(ErrorKind::CentralConfiguration, "candidate flow is undefined at rho = 0");
  }
  const double a = sys.exponent();
  const double Delta = oriented_area2(Q);
  const double lead = sys.mass_product() * epsilon * kappa * Delta / r.rho;
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = pair_j(i), k = pair_k(i), l = opposite(i);
    const double r_jk = std::abs(Q[j] - Q[k]);
    const double r_lj = std::abs(Q[l] - Q[j]);
    const double r_kl = std::abs(Q[k] - Q[l]);
    out[i] = lead * (std::pow(r_lj, -(a + 2.0)) - std::pow(r_kl, -(a + 2.0))) /
             (sys.mass(j) * sys.mass(k) * r_jk);
  }
  return out;
}

std::array<double, 3> torque_direct(std::span<const Planar> Q, const MassSystem& sys) {
  require_three(Q);
  const std::vector<Planar> g = forces(Q, sys);
  std::array<double, 3> out{};
  for (std::size_t l = 0; l < 3; ++l) out[l] = wedge(Q[l], g[l]);
  return out;
}

std::array<double, 3> torque_formula(std::span<const Planar> Q, const MassSystem& sys) {
  require_three(Q);
  const double a = sys.exponent();
  const double lead = sys.mass_product() * oriented_area2(Q) / sys.total_mass();
  std::array<double, 3> out{};
  for (std::size_t l = 0; l < 3; ++l) {
    const std::size_t j = (l + 1) % 3, k = (l + 2) % 3;
    out[l] = lead * (std::pow(std::abs(Q[l] - Q[j]), -(a + 2.0)) -
                     std::pow(std::abs(Q[k] - Q[l]), -(a + 2.0)));
  }
  return out;
}

std::vector<double> saari_relation_residual(const Trajectory& traj, double delta,
                                            std::size_t stride) {
  const MassSystem& sys = traj.system;
  const double a = sys.exponent();
  const IntegratorControls controls = tight_controls();
  std::vector<double> out;
  const std::size_t count = traj.samples.size();
  for (std::size_t i = 1; i + 1 < count; i += std::max<std::size_t>(1, stride)) {
    const AugmentedState& s = traj.samples[i];
    const double h = local_difference_step(s.phase.q, sys, delta);
    std::array<double, 5> S{}, mu{};
    for (int m = -2; m <= 2; ++m) {
      const AugmentedState x =
          m == 0 ? s : propagate(s, sys, s.phase.t + m * h, controls);
      const ShapeFrame f = frame_from_state(x, sys);
      S[static_cast<std::size_t>(m + 2)] = shape_kinetic(f, sys);
      mu[static_cast<std::size_t>(m + 2)] = configurational_measure(x.phase.q, sys);
    }
    auto d5 = [h](const std::array<double, 5>& v) {
      return (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
    };
    const double I = moment_of_inertia(s.phase.q, sys);
    const double rhs = 2.0 * std::pow(I, 1.0 - 0.5 * a) * d5(mu);
    out.push_back((d5(S) - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return out;
}

}  // namespace tribody

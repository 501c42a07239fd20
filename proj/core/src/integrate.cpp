#include "tribody/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "tribody/error.hpp"

namespace tribody {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "TimeLimit";
    case Termination::Collision: return "Collision";
    case Termination::Escape: return "Escape";
    case Termination::ToleranceFailure: return "ToleranceFailure";
  }
  return "Unknown";
}

namespace {

using Vec = std::vector<double>;

// Dormand-Prince 5(4) tableau with Hairer's continuous extension.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

using Rhs = std::function<void(const Vec&, Vec&)>;

class DormandPrince {
 public:
  DormandPrince(Rhs rhs, double rel_tol, double abs_tol)
      : rhs_(std::move(rhs)), rtol_(rel_tol), atol_(abs_tol) {}

  void reset(double t, Vec y) {
    t_ = t;
    y_ = std::move(y);
    const std::size_t n = y_.size();
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &ynew_, &err_}) v->assign(n, 0.0);
    for (auto& r : rcont_) r.assign(n, 0.0);
    rhs_(y_, k1_);
    last_factor_ = 1.0;
  }

  double t() const { return t_; }
  double t_prev() const { return t_prev_; }
  const Vec& y() const { return y_; }

  /// Hairer's starting step heuristic.
  double initial_step(double direction) {
    const std::size_t n = y_.size();
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = atol_ + rtol_ * std::abs(y_[i]);
      d0 += (y_[i] / sk) * (y_[i] / sk);
      d1 += (k1_[i] / sk) * (k1_[i] / sk);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    Vec y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y_[i] + direction * h0 * k1_[i];
    rhs_(y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = atol_ + rtol_ * std::abs(y_[i]);
      d2 += ((f1[i] - k1_[i]) / sk) * ((f1[i] - k1_[i]) / sk);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min(100.0 * h0, h1);
  }

  /// Attempts a step of signed size h. On success the state advances and the
  /// dense-output coefficients describe [t_prev, t]. `h_next` always receives
  /// the suggested next signed step. Exceptions from the right-hand side (a
  /// stage landing inside the collision guard) count as a rejection.
  bool try_step(double h, double& h_next) {
    const std::size_t n = y_.size();
    double err = 0.0;
    try {
      stage(n, h, {dp::a21}, {&k1_}, k2_);
      stage(n, h, {dp::a31, dp::a32}, {&k1_, &k2_}, k3_);
      stage(n, h, {dp::a41, dp::a42, dp::a43}, {&k1_, &k2_, &k3_}, k4_);
      stage(n, h, {dp::a51, dp::a52, dp::a53, dp::a54}, {&k1_, &k2_, &k3_, &k4_}, k5_);
      stage(n, h, {dp::a61, dp::a62, dp::a63, dp::a64, dp::a65}, {&k1_, &k2_, &k3_, &k4_, &k5_}, k6_);
      for (std::size_t i = 0; i < n; ++i) {
        ynew_[i] = y_[i] + h * (dp::a71 * k1_[i] + dp::a73 * k3_[i] + dp::a74 * k4_[i] +
                                dp::a75 * k5_[i] + dp::a76 * k6_[i]);
      }
      rhs_(ynew_, k7_);
    } catch (const Error&) {
      h_next = 0.25 * h;
      return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      err_[i] = h * (dp::e1 * k1_[i] + dp::e3 * k3_[i] + dp::e4 * k4_[i] + dp::e5 * k5_[i] +
                     dp::e6 * k6_[i] + dp::e7 * k7_[i]);
      const double sk = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
      err += (err_[i] / sk) * (err_[i] / sk);
    }
    err = std::sqrt(err / n);
    if (!std::isfinite(err)) {
      h_next = 0.25 * h;
      return false;
    }

    double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    if (err > 1.0) {
      h_next = h * std::min(fac, 1.0);
      last_factor_ = std::min(fac, 1.0);
      return false;
    }
    if (last_factor_ < 1.0) fac = std::min(fac, 1.0);  // no growth right after a rejection
    last_factor_ = fac;

    for (std::size_t i = 0; i < n; ++i) {
      const double dy = ynew_[i] - y_[i];
      rcont_[0][i] = y_[i];
      rcont_[1][i] = dy;
      rcont_[2][i] = h * k1_[i] - dy;
      rcont_[3][i] = dy - h * k7_[i] - rcont_[2][i];
      rcont_[4][i] = h * (dp::d1 * k1_[i] + dp::d3 * k3_[i] + dp::d4 * k4_[i] + dp::d5 * k5_[i] +
                          dp::d6 * k6_[i] + dp::d7 * k7_[i]);
    }
    t_prev_ = t_;
    t_ += h;
    y_.swap(ynew_);
    k1_.swap(k7_);
    h_next = h * fac;
    return true;
  }

  /// Fourth-order interpolant on the last accepted step.
  Vec dense(double t) const {
    const double h = t_ - t_prev_;
    const double s = h == 0.0 ? 1.0 : (t - t_prev_) / h;
    const double s1 = 1.0 - s;
    Vec out(y_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = rcont_[0][i] +
               s * (rcont_[1][i] + s1 * (rcont_[2][i] + s * (rcont_[3][i] + s1 * rcont_[4][i])));
    }
    return out;
  }

 private:
  template <std::size_t N>
  void stage(std::size_t n, double h, const double (&coef)[N], const Vec* const (&ks)[N], Vec& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < N; ++s) acc += coef[s] * (*ks[s])[i];
      tmp_[i] = y_[i] + h * acc;
    }
    rhs_(tmp_, out);
  }

  Rhs rhs_;
  double rtol_;
  double atol_;
  double t_ = 0.0;
  double t_prev_ = 0.0;
  double last_factor_ = 1.0;
  Vec y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, ynew_, err_;
  std::array<Vec, 5> rcont_;
};

// State layout: [q (2n) | p (2n) | tau | theta].
Vec pack(const AugmentedState& s) {
  const std::size_t n = s.phase.q.size();
  Vec y(4 * n + 2);
  for (std::size_t k = 0; k < n; ++k) {
    y[2 * k] = s.phase.q[k].real();
    y[2 * k + 1] = s.phase.q[k].imag();
    y[2 * n + 2 * k] = s.phase.p[k].real();
    y[2 * n + 2 * k + 1] = s.phase.p[k].imag();
  }
  y[4 * n] = s.tau;
  y[4 * n + 1] = s.theta;
  return y;
}

AugmentedState unpack(const Vec& y, std::size_t n, double t) {
  AugmentedState s;
  s.phase.q.resize(n);
  s.phase.p.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.phase.q[k] = {y[2 * k], y[2 * k + 1]};
    s.phase.p[k] = {y[2 * n + 2 * k], y[2 * n + 2 * k + 1]};
  }
  s.phase.t = t;
  s.tau = y[4 * n];
  s.theta = y[4 * n + 1];
  return s;
}

Rhs make_rhs(const MassSystem& sys, const ForceModel& force) {
  const std::size_t n = sys.size();
  return [&sys, &force, n](const Vec& y, Vec& dy) {
    std::vector<Planar> q(n), p(n);
    for (std::size_t k = 0; k < n; ++k) {
      q[k] = {y[2 * k], y[2 * k + 1]};
      p[k] = {y[2 * n + 2 * k], y[2 * n + 2 * k + 1]};
    }
    const std::vector<Planar> g = force ? force(q, sys) : forces(q, sys);
    double I = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double m = sys.mass(k);
      dy[2 * k] = p[k].real() / m;
      dy[2 * k + 1] = p[k].imag() / m;
      dy[2 * n + 2 * k] = g[k].real();
      dy[2 * n + 2 * k + 1] = g[k].imag();
      I += m * norm2(q[k]);
    }
    dy[4 * n] = 1.0 / I;
    dy[4 * n + 1] = angular_momentum(q, p) / I;
  };
}

double min_distance(const Vec& y, std::size_t n) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      r = std::min(r, std::hypot(y[2 * j] - y[2 * k], y[2 * j + 1] - y[2 * k + 1]));
    }
  }
  return r;
}

double inertia_of(const Vec& y, const MassSystem& sys) {
  double I = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    I += sys.mass(k) * (y[2 * k] * y[2 * k] + y[2 * k + 1] * y[2 * k + 1]);
  }
  return I;
}

void require_barycentric(const PhaseState& s, const MassSystem& sys) {
  if (s.q.size() != sys.size() || s.p.size() != sys.size()) {
    throw Error(ErrorKind::InvalidArgument, "initial state: body count does not match the mass system");
  }
  Planar centre{}, total_p{};
  double qmax = 0.0, pmax = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    centre += sys.mass(k) * s.q[k];
    total_p += s.p[k];
    qmax = std::max(qmax, std::abs(s.q[k]));
    pmax = std::max(pmax, std::abs(s.p[k]));
  }
  if (std::abs(centre) > 1e-12 * sys.total_mass() * qmax + 1e-300 ||
      std::abs(total_p) > 1e-12 * pmax + 1e-300) {
    throw Error(ErrorKind::PreconditionViolated,
                "initial state is not barycentric; call reduce_to_barycenter first");
  }
}

// Locates the zero of `event` (a function of the state) on the last step's
// interpolant by bisection to 1e-10 in t (or machine resolution).
double locate_event(const DormandPrince& stepper, const std::function<double(const Vec&)>& event) {
  double lo = stepper.t_prev();
  double hi = stepper.t();
  const double f_lo = event(stepper.dense(lo));
  for (int it = 0; it < 200; ++it) {
    if (std::abs(hi - lo) <= 1e-10 * std::max(1.0, std::abs(lo))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = event(stepper.dense(mid));
    if (std::signbit(f_mid) == std::signbit(f_lo)) lo = mid; else hi = mid;
  }
  return hi;
}

}  // namespace

Trajectory integrate(const PhaseState& initial, const MassSystem& sys,
                     const IntegratorControls& controls, const ForceModel& force) {
  require_barycentric(initial, sys);
  if (!(controls.rel_tol > 0.0) || !(controls.abs_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "integrator tolerances must be positive");
  }
  const std::size_t n = sys.size();
  Trajectory traj{sys, {}, Termination::TimeLimit};

  AugmentedState start;
  start.phase = initial;
  traj.samples.push_back(start);
  if (controls.t_end == initial.t) return traj;

  const double I0 = moment_of_inertia(initial.q, sys);
  if (!(I0 > 0.0)) throw Error(ErrorKind::ZeroInertia, "initial moment of inertia is zero");
  if (!force) check_separation(initial.q, sys);

  const double r_cut = controls.collision_radius * std::sqrt(I0);
  const double I_cut = controls.escape_factor * I0;
  const double direction = controls.t_end > initial.t ? 1.0 : -1.0;

  DormandPrince stepper(make_rhs(sys, force), controls.rel_tol, controls.abs_tol);
  stepper.reset(initial.t, pack(start));
  double h = direction * std::min(stepper.initial_step(direction), controls.max_step);

  std::size_t accepted = 0;
  for (std::size_t step = 0; step < controls.max_steps; ++step) {
    const double remaining = controls.t_end - stepper.t();
    bool last = false;
    if (std::abs(h) >= std::abs(remaining)) {
      h = remaining;
      last = true;
    }
    h = direction * std::min(std::abs(h), controls.max_step);

    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(stepper.t()));
    if (std::abs(h) < min_step) {
      traj.termination = Termination::ToleranceFailure;
      return traj;
    }

    double h_next = h;
    if (!stepper.try_step(h, h_next)) {
      h = h_next;
      continue;
    }
    ++accepted;

    const Vec& y = stepper.y();
    if (min_distance(y, n) < r_cut) {
      const double t_hit =
          locate_event(stepper, [&](const Vec& v) { return min_distance(v, n) - r_cut; });
      traj.samples.push_back(unpack(stepper.dense(t_hit), n, t_hit));
      traj.termination = Termination::Collision;
      return traj;
    }
    if (inertia_of(y, sys) > I_cut) {
      const double t_hit =
          locate_event(stepper, [&](const Vec& v) { return inertia_of(v, sys) - I_cut; });
      traj.samples.push_back(unpack(stepper.dense(t_hit), n, t_hit));
      traj.termination = Termination::Escape;
      return traj;
    }

    if (last) {
      traj.samples.push_back(unpack(y, n, controls.t_end));
      traj.termination = Termination::TimeLimit;
      return traj;
    }
    if (accepted % std::max<std::size_t>(1, controls.sample_stride) == 0) {
      traj.samples.push_back(unpack(y, n, stepper.t()));
    }
    h = h_next;
  }
  traj.termination = Termination::ToleranceFailure;
  return traj;
}

AugmentedState propagate(const AugmentedState& from, const MassSystem& sys, double t_target,
                         const IntegratorControls& controls, const ForceModel& force) {
  const double t0 = from.phase.t;
  if (t_target == t0) return from;
  const std::size_t n = sys.size();
  const double direction = t_target > t0 ? 1.0 : -1.0;

  DormandPrince stepper(make_rhs(sys, force), controls.rel_tol, controls.abs_tol);
  stepper.reset(t0, pack(from));
  double h = direction * std::min(stepper.initial_step(direction), controls.max_step);
  for (std::size_t step = 0; step < controls.max_steps; ++step) {
    const double remaining = t_target - stepper.t();
    bool last = false;
    if (std::abs(h) >= std::abs(remaining)) {
      h = remaining;
      last = true;
    }
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(stepper.t()));
    if (std::abs(h) < min_step) break;
    double h_next = h;
    if (!stepper.try_step(h, h_next)) {
      h = h_next;
      continue;
    }
    if (last) return unpack(stepper.y(), n, t_target);
    h = h_next;
  }
  std::ostringstream os;
  os << "propagation to t = " << t_target << " stalled at t = " << stepper.t();
  throw Error(ErrorKind::ToleranceFailure, os.str());
}

double local_difference_step(std::span<const Planar> q, const MassSystem& sys, double delta) {
  const double a = sys.exponent();
  double scale = 1.0;
  for (const auto [j, k] : body_pairs(q.size())) {
    const double r = std::abs(q[j] - q[k]);
    scale = std::min(scale, std::pow(r, 0.5 * (a + 2.0)) / std::sqrt(sys.mass(j) + sys.mass(k)));
  }
  return delta * scale;
}

std::vector<double> lagrange_jacobi_residuals(const Trajectory& traj, double delta,
                                              std::size_t stride) {
  const MassSystem& sys = traj.system;
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "Lagrange-Jacobi check needs three bodies");
  const double a = sys.exponent();
  IntegratorControls tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-15;

  std::vector<double> out;
  const std::size_t count = traj.samples.size();
  const auto& m = sys.masses();
  for (std::size_t i = 1; i + 1 < count; i += std::max<std::size_t>(1, stride)) {
    const AugmentedState& s = traj.samples[i];
    const auto& q = s.phase.q;
    const auto pairs = body_pairs(3);
    BodyPair close = pairs[0];
    for (const auto& pr : pairs) {
      if (std::abs(q[pr.j] - q[pr.k]) < std::abs(q[close.j] - q[close.k])) close = pr;
    }
    const std::size_t j = close.j, k = close.k, l = 3 - j - k;
    const double m_in = m[j] * m[k] / (m[j] + m[k]);
    const double m_out = (m[j] + m[k]) * m[l] / sys.total_mass();
    auto inner = [&](const std::vector<Planar>& x) { return norm2(x[k] - x[j]); };
    auto outer = [&](const std::vector<Planar>& x) {
      return norm2(x[l] - (m[j] * x[j] + m[k] * x[k]) / (m[j] + m[k]));
    };
    auto second_difference = [&](auto&& term, double h) {
      const AugmentedState fwd = propagate(s, sys, s.phase.t + h, tight);
      const AugmentedState bwd = propagate(s, sys, s.phase.t - h, tight);
      return (term(fwd.phase.q) - 2.0 * term(q) + term(bwd.phase.q)) / (h * h);
    };
    const double h_in = delta * std::min(1.0, std::pow(std::sqrt(inner(q)), 0.5 * (a + 2.0)) /
                                                  std::sqrt(m[j] + m[k]));
    const double h_out = delta * std::min(1.0, std::pow(std::sqrt(outer(q)), 0.5 * (a + 2.0)) /
                                                   std::sqrt(sys.total_mass()));
    const double second = m_in * second_difference(inner, h_in) + m_out * second_difference(outer, h_out);

    const ScalarDiagnostics d = scalar_diagnostics(s.phase, sys);
    const double expected = 4.0 * d.H + 2.0 * (2.0 - a) * d.U;
    const double scale = std::max(1.0, std::abs(4.0 * d.H) + std::abs(2.0 * (2.0 - a) * d.U));
    out.push_back((second - expected) / scale);
  }
  return out;
}

}  // namespace tribody

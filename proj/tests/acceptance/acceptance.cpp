#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "tribody/audit.hpp"
#include "tribody/central_config.hpp"
#include "tribody/cli/commands.hpp"
#include "tribody/conditions.hpp"
#include "tribody/events.hpp"
#include "tribody/shape_frame.hpp"
#include "tribody/presets.hpp"

using namespace tribody;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;
const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

MassSystem equal() { return MassSystem({1.0, 1.0, 1.0}, 1.0); }

Trajectory run(const PhaseState& s, const MassSystem& sys, double t_end, double escape_factor = 1e6) {
  IntegratorControls c;
  c.t_end = t_end;
  c.escape_factor = escape_factor;
  return integrate(s, sys, c);
}

const CriticalPath& origin_path() {
  static const CriticalPath path =
      critical_path_contour(ShapeChart(equal()), 5.0 / kSqrt2, {-0.05, 0.05, -0.15, 0.15}, 4096);
  return path;
}

double euler_quintic_root(double m1, double m2, double m3) {
  auto p = [&](double x) {
    return (m1 + m2) * std::pow(x, 5) + (3 * m1 + 2 * m2) * std::pow(x, 4) + (3 * m1 + m2) * std::pow(x, 3) -
           (m2 + 3 * m3) * x * x - (2 * m2 + 3 * m3) * x - (m2 + m3);
  };
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double directional_limit(double m1, double m2, double m3, double a, bool vertical) {
  const double S = m1 * m2 + m2 * m3 + m3 * m1;
  const double scale = std::pow(S / (m1 + m2 + m3), a / 2);
  if (vertical) {
    return 3 * (a + 2) * (m1 + m2) * S * S / (4 * m1 * m2 * m3 * (m1 * m1 + m1 * m2 + m2 * m2)) * scale;
  }
  return 3 * (a + 2) * (m1 + m2 + 4 * m3) * S * S /
         (4 * m1 * m2 * m3 * (m1 * m1 + m2 * m2 + 4 * m3 * m3 - m1 * m2 + 2 * m2 * m3 + 2 * m3 * m1)) * scale;
}

Outcome critical_measure_value() {
  const ShapeChart chart(equal());
  const auto t0 = std::chrono::steady_clock::now();
  const double mu = mu_on_chart(0.0, 0.0, chart);
  const double dt = seconds_since(t0);
  const double err = std::abs(mu - 5.0 / kSqrt2);
  return {err <= 1e-12 && dt < 1e-3, "|mu - 5/sqrt2| = " + num(err) + ", " + num(dt * 1e3) + " ms"};
}

Outcome critical_path_series() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fit = series_fit_critical_path(origin_path(), 0.05);
  const double dt = seconds_since(t0);
  const double e2 = rel(fit.c2, 29.0 / 7), e4 = rel(fit.c4, -7491.0 / 343);
  return {e2 <= 0.01 && e4 <= 0.05 && dt < 30.0,
          "c2 rel " + num(e2) + ", c4 rel " + num(e4) + ", " + num(dt) + " s"};
}

Outcome rho2_series() {
  const auto fit = rho2_fit_on_path(origin_path(), ShapeChart(equal()), 0.05);
  const double e = rel(fit.c2, 58.0);
  return {e <= 0.01, "rho2 c2 = " + num(fit.c2) + ", rel " + num(e)};
}

Outcome finite_limit() {
  const std::vector<double> xs{1e-3};
  const auto lim = series_limits_on_path(ShapeChart(equal()), 5.0 / kSqrt2, xs);
  const double e = rel(lim.rows[0].f_over_rho4, -7491.0 / (1624.0 * kSqrt2));
  return {e <= 0.005, "f1/rho^4 + f2/rho^2 = " + num(lim.rows[0].f_over_rho4) + ", rel " + num(e)};
}

Outcome equilateral_limit() {
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const auto lim = equilateral_limits(equal(), {k * kPi / 4, default_radius_ladder()});
    worst = std::max(worst, rel(lim.limit, 13.5));
  }
  const MassSystem sys({4.0, 2.0, 1.0}, 1.0);
  const double v = directional_limit(4, 2, 1, 1, true), h = directional_limit(4, 2, 1, 1, false);
  const double ev = rel(equilateral_limits(sys, {kPi / 2, default_radius_ladder()}).limit, v);
  const double eh = rel(equilateral_limits(sys, {0.0, default_radius_ladder()}).limit, h);
  const bool distinct = std::abs(v - h) > 0.01 * std::max(v, h);
  return {worst <= 0.005 && ev <= 0.005 && eh <= 0.005 && distinct,
          "equal masses worst rel " + num(worst) + "; (4,2,1) vertical rel " + num(ev) + ", horizontal rel " +
              num(eh) + ", limits " + num(v) + " vs " + num(h)};
}

Outcome lagrange_regression() {
  const auto sys = equal();
  const double t_end = 10 * 2 * kPi / kSqrt3;
  const auto t0 = std::chrono::steady_clock::now();
  const auto traj = run(lagrange_circular(sys, 1.0, 1.0), sys, t_end);
  const auto rep = audit(traj);
  const double dt = seconds_since(t0);
  double dI = 0.0, dmu = 0.0, gap = 0.0;
  for (const auto& s : traj.samples) {
    const auto d = scalar_diagnostics(s.phase, sys);
    dI = std::max(dI, std::abs(d.I - 1.0));
    dmu = std::max(dmu, std::abs(d.mu - 3.0));
    gap = std::max(gap, std::abs(d.B - d.C * d.C));
  }
  const bool ok = dI <= 1e-8 && dmu <= 1e-8 && gap <= 1e-8 && rep.homography_score <= 1e-6 &&
                  rep.verdict == Verdict::Homographic && dt < 1.0;
  return {ok, "max |I-1| " + num(dI) + ", |mu-3| " + num(dmu) + ", |B-C^2| " + num(gap) + ", score " +
                  num(rep.homography_score) + ", verdict " + to_string(rep.verdict) + ", " + num(dt) + " s"};
}

Outcome homothety() {
  const auto sys = equal();
  const auto traj = run(equilateral_freefall(sys), sys, 10.0);
  double B = 0.0;
  for (const auto& s : traj.samples) B = std::max(B, std::abs(scalar_diagnostics(s.phase, sys).B));
  const auto& q = traj.samples.back().phase.q;
  const double I0 = moment_of_inertia(traj.samples.front().phase.q, sys);
  double r = 0.0;
  for (auto [j, k] : body_pairs(3)) r = std::max(r, std::abs(q[j] - q[k]));
  const bool ok = B <= 1e-9 && traj.termination == Termination::Collision && r <= 1e-5 * std::sqrt(I0);
  return {ok, "max |B| " + num(B) + ", termination " + to_string(traj.termination) + ", final max r_jk " + num(r)};
}

Outcome sundman_suite() {
  gen::Rng rng(20240601);
  double worst = -1e300;
  int orbits = 0, samples = 0;
  while (orbits < 100) {
    const MassSystem sys(gen::random_masses(rng), 1.0);
    const auto s0 = gen::random_state(rng, sys, gen::uniform(rng, 0.1, 0.9));
    if (scalar_diagnostics(s0, sys).H >= 0.0) continue;
    const auto traj = run(s0, sys, 2.0);
    for (const auto& s : traj.samples) {
      const auto d = scalar_diagnostics(s.phase, sys);
      worst = std::max(worst, -(d.B - d.C * d.C) / std::max(1.0, d.B));
      ++samples;
    }
    ++orbits;
  }
  return {worst <= 1e-9, std::to_string(samples) + " samples, worst normalised deficit " + num(worst)};
}

Outcome rho_dual() {
  gen::Rng rng(20240602);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MassSystem sys(gen::random_masses(rng), gen::uniform(rng, 0.3, 3.0));
    const auto f = frame_from_shape(gen::random_triangle(rng), sys);
    const auto r = rho_of(f.Q, sys, f.mu);
    worst = std::max(worst, std::abs(r.rho2_G - r.rho2_E) / std::max(1.0, r.rho2_G));
  }
  return {worst <= 1e-12, "worst normalised difference " + num(worst)};
}

Outcome dr_dtau_routes() {
  gen::Rng rng(20240603);
  double worst_route = 0.0, worst_fd = 0.0;
  int frames = 0;
  while (frames < 100) {
    const MassSystem sys(gen::random_masses(rng), gen::uniform(rng, 0.5, 2.0));
    const auto f = frame_from_shape(gen::random_triangle(rng, 0.25), sys);
    if (f.rho < 1e-3) continue;
    const double kappa = gen::uniform(rng, 0.2, 2.0);
    const int eps = frames % 2 ? 1 : -1;
    const auto P = candidate_momenta(f.Q, sys, f.mu, kappa, eps);
    const auto general = dr_dtau_general(f.Q, P, sys);
    const auto candidate = dr_dtau_candidate(f.Q, sys, f.mu, kappa, eps);
    double scale = 1e-3;
    for (double v : general) scale = std::max(scale, std::abs(v));
    const double h = 1e-5;
    const auto flow = candidate_flow(f.Q, sys, kappa, eps, 2 * h, 2);
    const auto mid = dr_dtau_general(flow[1].Q, flow[1].P, sys);
    const auto pairs = body_pairs(3);
    for (std::size_t i = 0; i < 3; ++i) {
      worst_route = std::max(worst_route, std::abs(general[i] - candidate[i]) / scale);
      const auto [j, k] = pairs[i];
      const double fd = (std::abs(flow[2].Q[j] - flow[2].Q[k]) - std::abs(flow[0].Q[j] - flow[0].Q[k])) / (2 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - mid[i]) / std::max(1.0, scale));
    }
    ++frames;
  }
  return {worst_route <= 1e-10 && worst_fd <= 1e-5,
          "routes " + num(worst_route) + ", finite differences " + num(worst_fd)};
}

Outcome lagrange_jacobi_and_decomposition() {
  std::vector<Trajectory> orbits;
  const auto eq = equal();
  orbits.push_back(run(lagrange_circular(eq), eq, 2 * 2 * kPi / kSqrt3));
  orbits.push_back(run(equilateral_freefall(eq), eq, 0.5));
  const MassSystem skew({4.0, 2.0, 1.0}, 1.0);
  orbits.push_back(run(euler_collinear_spin(skew, 2, 1.0, 0.9), skew, 1.0));
  gen::Rng rng(20240604);
  for (int i = 0; i < 5; ++i) {
    const MassSystem sys(gen::random_masses(rng), 1.0);
    orbits.push_back(run(gen::random_state(rng, sys, gen::uniform(rng, 0.2, 0.9)), sys, 1.0));
  }
  double worst_split = 0.0, worst_lj = 0.0;
  for (const auto& traj : orbits) {
    const auto& sys = traj.system;
    for (const auto& s : traj.samples) {
      const auto d = scalar_diagnostics(s.phase, sys);
      const auto f = frame_from_state(s, sys);
      const double split =
          d.C * d.C / (2 * d.I) + d.dIdt * d.dIdt / (8 * d.I) + shape_kinetic(f, sys) / (2 * d.I);
      if (d.T > 0.0) worst_split = std::max(worst_split, std::abs(split - d.T) / d.T);
    }
    for (double r : lagrange_jacobi_residuals(traj, 1e-3, 4)) worst_lj = std::max(worst_lj, std::abs(r));
  }
  return {worst_split <= 1e-8 && worst_lj <= 1e-4,
          std::to_string(orbits.size()) + " orbits, kinetic split rel " + num(worst_split) +
              ", Lagrange-Jacobi normalised " + num(worst_lj)};
}

Outcome euler_solver() {
  const auto r = euler_collinear(MassSystem({4.0, 2.0, 1.0}, 1.0), 2);
  const double err = std::abs(r.ratio - euler_quintic_root(4.0, 2.0, 1.0));
  return {err <= 1e-10 && r.rho_check <= 1e-10, "ratio error " + num(err) + ", rho " + num(r.rho_check)};
}

Outcome phi_and_critical_path() {
  cli::PhiOptions bound;
  bound.H = -1.5;
  bound.mu = 3.0;
  bound.B = 2.0;
  const auto b = cli::summarize_phi(bound);
  cli::PhiOptions unbound = bound;
  unbound.H = 1.0;
  unbound.B.reset();
  const auto u = cli::summarize_phi(unbound);
  cli::PhiOptions parabolic = unbound;
  parabolic.H = 0.0;
  const auto p = cli::summarize_phi(parabolic);
  const bool phi_ok = b.interior_minimum && b.roots.size() == 2 && u.monotone_decreasing && p.monotone_decreasing;

  cli::CriticalPathOptions cp;
  cp.grid_n = 512;
  const auto res = cli::cmd_critical_path(cp);
  const double cell = 8.0 / cp.grid_n;
  bool through = false;
  if (res.exit_code == 0 && res.files.size() == 1) {
    std::map<long, std::vector<std::pair<double, double>>> lines;
    std::istringstream in(res.files[0].content);
    std::string row;
    while (std::getline(in, row)) {
      if (row.empty() || row[0] == '#' || row[0] == 'p') continue;
      long id = 0;
      double x = 0, y = 0, mu = 0;
      if (std::sscanf(row.c_str(), "%ld,%lf,%lf,%lf", &id, &x, &y, &mu) == 4) lines[id].push_back({x, y});
    }
    for (const auto& [id, pts] : lines) {
      bool all = true;
      for (double target : {-3.0, 0.0, 3.0}) {
        double best = 1e300;
        for (const auto& [x, y] : pts) best = std::min(best, std::hypot(x - target, y));
        all = all && best <= cell;
      }
      through = through || all;
    }
  }
  return {phi_ok && through, std::string("Phi: bound roots ") + std::to_string(b.roots.size()) +
                                 (u.monotone_decreasing && p.monotone_decreasing ? ", H>=0 monotone" : ", H>=0 not monotone") +
                                 "; critical path " + (through ? "connects" : "misses") + " (-3,0),(0,0),(3,0)"};
}

Outcome asymptotic_exponents() {
  const auto sys = equal();
  const auto shape = equilateral_freefall(sys).q;
  const auto parabolic = asymptotics_check(run(homothetic_escape(sys, shape, 0.0), sys, 1e9));
  const auto hyperbolic = asymptotics_check(run(homothetic_escape(sys, shape, 0.5), sys, 1e9));
  const double e0 = rel(parabolic.I_growth_exponent, 2.0), e1 = rel(hyperbolic.I_growth_exponent, 1.0);
  return {e0 <= 0.02 && e1 <= 0.02 && std::isfinite(parabolic.tau_infinity) && std::isfinite(hyperbolic.tau_infinity),
          "H=0 p = " + num(parabolic.I_growth_exponent) + ", H>0 p = " + num(hyperbolic.I_growth_exponent)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "critical-measure value", critical_measure_value},
      {2, "critical-path series", critical_path_series},
      {3, "rho^2 series", rho2_series},
      {4, "finite limit on the critical path", finite_limit},
      {5, "near-equilateral limits", equilateral_limit},
      {6, "Lagrange relative equilibrium over 10 periods", lagrange_regression},
      {7, "homothety and total collision", homothety},
      {8, "Sundman inequality on random bounded orbits", sundman_suite},
      {9, "rho dual-formula oracle", rho_dual},
      {10, "dr/dtau routes and finite differences", dr_dtau_routes},
      {11, "Lagrange-Jacobi and kinetic decomposition", lagrange_jacobi_and_decomposition},
      {12, "Euler collinear solver", euler_solver},
      {13, "Phi dichotomy and equal-mass critical path", phi_and_critical_path},
      {14, "asymptotic exponents", asymptotic_exponents},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria; one PASS/FAIL line each"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, 14));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}

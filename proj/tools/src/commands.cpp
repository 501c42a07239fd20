#include "tribody/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "tribody/audit.hpp"
#include "tribody/conditions.hpp"
#include "tribody/error.hpp"
#include "tribody/cli/output.hpp"

namespace tribody::cli {

using json = nlohmann::ordered_json;

namespace {

std::string comment_block(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "# " + l + "\n";
  return out;
}

std::string pair_name(BodyPair p) { return std::to_string(p.j + 1) + std::to_string(p.k + 1); }

}  // namespace

CommandResult cmd_simulate(const PreparedRun& run) {
  const Trajectory traj = integrate(run.initial, run.system, run.controls);
  const std::size_t n = run.system.size();

  std::vector<std::string> meta = run.notes;
  meta.push_back(std::string("termination = ") + to_string(traj.termination));
  meta.push_back("samples = " + std::to_string(traj.samples.size()));

  std::string csv = comment_block(meta);
  csv += "t,tau,theta";
  for (const char* v : {"q", "p"}) {
    for (std::size_t k = 1; k <= n; ++k) csv += "," + std::string(v) + std::to_string(k) + "x," + v + std::to_string(k) + "y";
  }
  csv += ",I,dIdt,U,T,H,C,mu,B\n";

  std::vector<double> row;
  for (const auto& s : traj.samples) {
    row.assign({s.phase.t, s.tau, s.theta});
    for (const auto& q : s.phase.q) row.insert(row.end(), {q.real(), q.imag()});
    for (const auto& p : s.phase.p) row.insert(row.end(), {p.real(), p.imag()});
    const ScalarDiagnostics d = scalar_diagnostics(s.phase, run.system);
    row.insert(row.end(), {d.I, d.dIdt, d.U, d.T, d.H, d.C, d.mu, d.B});
    csv += csv_row(row);
  }

  CommandResult r;
  r.files.push_back({"trajectory.csv", std::move(csv)});
  if (traj.termination == Termination::ToleranceFailure) {
    r.exit_code = kIntegration;
    r.message = "integration stopped: step size underflow at t = " + fmt(traj.samples.back().phase.t);
  }
  return r;
}

CommandResult cmd_audit(const PreparedRun& run) {
  const Trajectory traj = integrate(run.initial, run.system, run.controls);
  CommandResult r;
  if (traj.termination == Termination::ToleranceFailure) {
    r.exit_code = kIntegration;
    r.message = "integration stopped: step size underflow at t = " + fmt(traj.samples.back().phase.t);
    return r;
  }
  const ConjectureReport rep = audit(traj);

  json events = json::array();
  for (const auto& e : rep.events.events) {
    events.push_back({{"tau0", e.tau0}, {"pair", pair_name(e.pair)}, {"class", to_string(e.shape.kind)}});
  }
  json residuals = {{"epsilon", rep.epsilon}, {"values", rep.condition_residuals}};
  if (rep.dual_epsilon) residuals["values_flipped"] = rep.condition_residuals_flipped;

  const json doc = {
      {"mu_mean", rep.mu_mean},
      {"mu_drift", rep.mu_drift},
      {"B_mean", rep.B_mean},
      {"B_drift", rep.B_drift},
      {"C", rep.C},
      {"sundman_gap", rep.sundman_gap},
      {"category", rep.category ? to_string(*rep.category) : "Unclassified"},
      {"homography_score", rep.homography_score},
      {"events", events},
      {"condition_residuals", residuals},
      {"verdict", to_string(rep.verdict)},
  };
  r.files.push_back({"audit.json", doc.dump(2) + "\n"});
  return r;
}

CommandResult cmd_critical_path(const CriticalPathOptions& opt) {
  const ShapeChart chart(MassSystem(opt.masses, opt.a));
  std::vector<double> levels;
  if (opt.level) {
    levels.push_back(*opt.level);
  } else {
    for (double v : critical_measures(chart.system()).mu_c) {
      const bool seen = std::any_of(levels.begin(), levels.end(),
                                    [&](double l) { return std::abs(l - v) <= 1e-9 * l; });
      if (!seen) levels.push_back(v);
    }
  }

  CommandResult r;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    CriticalPath path;
    try {
      path = critical_path_contour(chart, levels[i], opt.window, opt.grid_n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyContour) throw;
      r.message += "no contour at level " + fmt(levels[i]) + "\n";
      if (opt.level) r.exit_code = kEmpty;
      continue;
    }
    std::string csv = comment_block({"level = " + fmt(levels[i]), "grid_n = " + std::to_string(opt.grid_n),
                                     "polylines = " + std::to_string(path.polylines.size())});
    csv += "polyline_id,x,y,mu\n";
    for (std::size_t id = 0; id < path.polylines.size(); ++id) {
      for (const auto& p : path.polylines[id]) {
        const double row[] = {static_cast<double>(id), p.x, p.y, mu_on_chart(p.x, p.y, chart)};
        csv += csv_row(row);
      }
    }
    const std::string name = opt.level ? "critical_path.csv" : "critical_path_" + std::to_string(i + 1) + ".csv";
    r.files.push_back({name, std::move(csv)});
  }
  if (r.files.empty() && r.exit_code == kOk) r.exit_code = kEmpty;
  return r;
}

PhiSummary summarize_phi(const PhiOptions& opt) {
  PhiSummary s;
  std::vector<double> I(static_cast<std::size_t>(opt.n)), phi(I.size());
  for (std::size_t i = 0; i < I.size(); ++i) {
    I[i] = opt.I_lo * std::pow(opt.I_hi / opt.I_lo, static_cast<double>(i) / (opt.n - 1));
    phi[i] = phi_of_I(I[i], opt.H, opt.mu, opt.a);
  }
  const auto lowest = static_cast<std::size_t>(std::min_element(phi.begin(), phi.end()) - phi.begin());
  s.interior_minimum = lowest > 0 && lowest + 1 < phi.size();
  if (s.interior_minimum && opt.a < 2.0 && opt.H < 0.0 && opt.mu > 0.0) {
    s.I_at_minimum = std::pow(opt.mu * (2.0 - opt.a) / (-2.0 * opt.H), 2.0 / opt.a);
  }
  s.monotone_decreasing = true;
  for (std::size_t i = 1; i < phi.size(); ++i) s.monotone_decreasing = s.monotone_decreasing && phi[i] < phi[i - 1];

  if (opt.B) {
    PhiProfile prof{opt.H, opt.mu, opt.a, *opt.B, {}, {}};
    const TurningPoints tp = turning_points(prof, std::sqrt(opt.I_lo * opt.I_hi));
    s.double_root = tp.double_root;
    for (const auto& r : {tp.I_min, tp.I_max}) {
      if (r && *r >= opt.I_lo && *r <= opt.I_hi) s.roots.push_back(*r);
    }
    if (s.double_root && s.roots.size() == 2) s.roots.pop_back();
  }
  return s;
}

CommandResult cmd_phi_profile(const PhiOptions& opt) {
  if (!(opt.I_lo > 0.0) || !(opt.I_hi > opt.I_lo) || opt.n < 2) {
    throw Error(ErrorKind::InvalidArgument, "phi-profile needs 0 < I-min < I-max and n >= 2");
  }
  const PhiSummary s = summarize_phi(opt);
  std::vector<std::string> meta{"H = " + fmt(opt.H), "mu = " + fmt(opt.mu), "a = " + fmt(opt.a)};
  if (opt.B) meta.push_back("B = " + fmt(*opt.B));
  meta.push_back(std::string("shape = ") + (s.interior_minimum ? "interior_minimum" : s.monotone_decreasing ? "monotone_decreasing" : "other"));
  if (s.I_at_minimum) meta.push_back("minimum_at_I = " + fmt(*s.I_at_minimum));
  for (double r : s.roots) meta.push_back("root_I = " + fmt(r));
  if (s.double_root) meta.push_back("double_root = true");

  std::string csv = comment_block(meta) + "I,phi\n";
  for (int i = 0; i < opt.n; ++i) {
    const double I = opt.I_lo * std::pow(opt.I_hi / opt.I_lo, static_cast<double>(i) / (opt.n - 1));
    const double row[] = {I, phi_of_I(I, opt.H, opt.mu, opt.a)};
    csv += csv_row(row);
  }
  CommandResult r;
  r.files.push_back({"phi_profile.csv", std::move(csv)});
  return r;
}

std::vector<SeriesEntry> series_check(const SeriesOptions& opt) {
  const MassSystem sys({1.0, 1.0, 1.0}, 1.0);
  const ShapeChart chart(sys);
  const double level = critical_measures(sys).mu_c[1];
  const double s2 = std::numbers::sqrt2;

  auto entry = [](std::string name, double fit, double reference, double tol) {
    return SeriesEntry{std::move(name), fit, reference, std::abs(fit - reference) / std::abs(reference), tol};
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SeriesEntry> out;

  SeriesFit path_fit{nan, nan, nan, 0}, rho_fit{nan, nan, nan, 0};
  try {
    const ChartWindow w{-opt.max_x, opt.max_x, -3.0 * opt.max_x, 3.0 * opt.max_x};
    const CriticalPath path = critical_path_contour(chart, level, w, opt.grid_n);
    path_fit = series_fit_critical_path(path, opt.max_x);
    rho_fit = rho2_fit_on_path(path, chart, opt.max_x);
  } catch (const Error&) {
    // Reported as a failed fit below.
  }
  out.push_back(entry("c2", path_fit.c2, 29.0 / 7.0, 0.01));
  out.push_back(entry("c4", path_fit.c4, -7491.0 / 343.0, 0.05));
  out.push_back(entry("rho2_c2", rho_fit.c2, 58.0, 0.01));

  std::vector<double> xs{0.02};
  for (int i = 0; i < 6; ++i) xs.push_back(0.5 * xs.back());
  const PathLimits lim = series_limits_on_path(chart, level, xs);
  out.push_back(entry("limit_fOverRho", lim.f_over_rho4->value, -7491.0 / (1624.0 * s2), 0.005));

  const EquilateralLimit eq = equilateral_limits(sys, {std::numbers::pi / 2.0, default_radius_ladder()});
  out.push_back(entry("equilateral_limit", eq.limit, 13.5, 0.005));
  for (auto& e : out) {
    if (std::isnan(e.rel_err)) e.rel_err = std::numeric_limits<double>::infinity();
  }
  return out;
}

CommandResult cmd_series_check(const SeriesOptions& opt) {
  const std::vector<SeriesEntry> entries = series_check(opt);
  json doc = json::object();
  CommandResult r;
  for (const auto& e : entries) {
    const auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    doc[e.name] = {{"fit", finite_or_null(e.fit)}, {"reference", e.reference}, {"rel_err", finite_or_null(e.rel_err)}};
    if (!e.pass()) {
      r.exit_code = kAcceptance;
      r.message += e.name + " outside tolerance: rel_err " + fmt(e.rel_err) + " > " + fmt(e.tolerance) + "\n";
    }
  }
  r.files.push_back({"series_check.json", doc.dump(2) + "\n"});
  return r;
}

CommandResult cmd_central_configs(const std::vector<double>& masses, double a) {
  const MassSystem sys(masses, a);
  json list = json::array();
  auto add = [&](const CentralConfigResult& c) {
    json shape = json::array();
    for (const auto& q : c.shape) shape.push_back({q.real(), q.imag()});
    json item = {{"kind", to_string(c.kind)}, {"mu_c", c.mu_c}, {"rho_check", c.rho_check}};
    if (c.ratio > 0.0) item["ratio"] = c.ratio;
    item["shape"] = shape;
    list.push_back(item);
  };
  for (const auto& c : equilateral_config(sys)) add(c);
  for (int k = 1; k <= 3; ++k) add(euler_collinear(sys, k));
  const json doc = {{"masses", masses}, {"a", a}, {"configurations", list}};
  CommandResult r;
  r.files.push_back({"central_configs.json", doc.dump(2) + "\n"});
  return r;
}

}  // namespace tribody::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tribody/central_config.hpp"
#include "tribody/cli/scenario.hpp"

namespace tribody::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kIntegration = 3,
  kEmpty = 4,
  kAcceptance = 5,
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  int exit_code = kOk;
  std::vector<OutputFile> files;
  std::string message;  // for stderr
};

/// Trajectory CSV: t, tau, theta, q1x, q1y, ..., pNx, pNy, I, dIdt, U, T, H, C, mu, B.
CommandResult cmd_simulate(const PreparedRun& run);

/// Audit report as one JSON document.
CommandResult cmd_audit(const PreparedRun& run);

struct CriticalPathOptions {
  std::vector<double> masses{1.0, 1.0, 1.0};
  double a = 1.0;
  std::optional<double> level;  // empty: every distinct rectilinear critical value
  ChartWindow window{};
  int grid_n = 512;
};

/// CSV per level: polyline_id, x, y, mu.
CommandResult cmd_critical_path(const CriticalPathOptions& opt);

struct PhiOptions {
  double H = -1.5;
  double mu = 3.0;
  double a = 1.0;
  std::optional<double> B;
  double I_lo = 1e-3;
  double I_hi = 10.0;
  int n = 400;
};

/// Structural summary of a sampled Phi, alongside the CSV.
struct PhiSummary {
  bool interior_minimum = false;
  std::optional<double> I_at_minimum;
  bool monotone_decreasing = false;
  std::vector<double> roots;  // of Phi = -2B inside the sampled range
  bool double_root = false;
};

PhiSummary summarize_phi(const PhiOptions& opt);

/// CSV: I, phi. Comment lines carry the summary.
CommandResult cmd_phi_profile(const PhiOptions& opt);

struct SeriesOptions {
  double max_x = 0.05;
  int grid_n = 4096;
};

struct SeriesEntry {
  std::string name;
  double fit = 0.0;
  double reference = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass() const { return rel_err <= tolerance; }
};

/// Equal masses, a = 1: fitted path series and limits against their
/// reference values.
std::vector<SeriesEntry> series_check(const SeriesOptions& opt);

/// JSON of series_check; exit 5 if any entry is outside its tolerance.
CommandResult cmd_series_check(const SeriesOptions& opt);

/// JSON listing the five central configurations.
CommandResult cmd_central_configs(const std::vector<double>& masses, double a);

}  // namespace tribody::cli

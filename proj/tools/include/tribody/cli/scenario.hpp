#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tribody/dynamics.hpp"
#include "tribody/integrate.hpp"

namespace tribody::cli {

/// Scenario files are `key = value` lines with dotted section prefixes:
///
///   system.masses = 1, 1, 1
///   system.a = 1
///   initial.preset = lagrange_circular   # or euler_collinear_spin,
///                                        # equilateral_freefall, custom
///   initial.positions = x1, y1, x2, y2, x3, y3   (custom only)
///   initial.momenta = ...                        (custom only)
///   preset.side = 1
///   preset.omega_scale = 1
///   preset.middle = 2
///   integrator.t_end = 10
///   integrator.rel_tol = 1e-12
///   integrator.abs_tol = 1e-14
///   integrator.max_step = 0.1
///   output.stride = 1
///
/// '#' starts a comment. Unknown keys and repeated keys are errors.
struct Scenario {
  std::vector<double> masses;
  double a = 1.0;
  std::string preset = "custom";
  std::vector<double> positions;
  std::vector<double> momenta;
  double side = 1.0;
  double omega_scale = 1.0;
  int middle = 2;
  IntegratorControls controls;
  std::size_t stride = 1;
  /// Line of each key in the source, for error messages.
  std::map<std::string, std::size_t> lines;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// A scenario turned into something integrable. Custom states are moved to
/// the barycentric frame. `notes` holds the preset's analytic diagnostics.
struct PreparedRun {
  MassSystem system;
  PhaseState initial;
  IntegratorControls controls;
  std::vector<std::string> notes;
};

/// Throws ParseError naming the offending field on invalid content.
PreparedRun prepare(const Scenario& s);

}  // namespace tribody::cli

#include "tribody/cli/app.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "tribody/cli/commands.hpp"
#include "tribody/cli/output.hpp"
#include "tribody/error.hpp"

namespace tribody::cli {

namespace {

std::vector<double> split_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(0, what, "expected comma-separated numbers, got '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const CommandResult& r, const std::string& out_dir, std::uint64_t seed, bool seed_set,
          std::ostream& out, std::ostream& err) {
  for (const auto& f : r.files) {
    std::string content = f.content;
    if (seed_set) {
      const std::string line = "seed = " + std::to_string(seed);
      const bool is_json = f.name.size() > 5 && f.name.compare(f.name.size() - 5, 5, ".json") == 0;
      if (!is_json) content = "# " + line + "\n" + content;
    }
    if (out_dir.empty()) {
      out << content;
    } else {
      write_atomic(out_dir, f.name, content);
    }
  }
  if (!r.message.empty()) err << r.message << (r.message.back() == '\n' ? "" : "\n");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar three-body laboratory: homographic motion, shape coordinates, critical paths"};
  app.require_subcommand(1);

  std::string out_dir;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  app.add_option("--out", out_dir, "Directory for output files (default: stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed recorded in the output metadata");
  app.add_option("--tol", tol, "Override the integrator relative tolerance")->check(CLI::PositiveNumber);

  std::string scenario_path;
  auto* sim = app.add_subcommand("simulate", "Integrate a scenario and write the trajectory CSV");
  sim->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* aud = app.add_subcommand("audit", "Integrate a scenario and write the audit report JSON");
  aud->add_option("scenario", scenario_path, "Scenario file")->required();

  CriticalPathOptions cp;
  std::string cp_masses = "1,1,1", cp_level = "auto", cp_window = "-4,4,-4,4";
  auto* crit = app.add_subcommand("critical-path", "Level sets of mu through the rectilinear configurations");
  crit->add_option("--masses", cp_masses, "m1,m2,m3");
  crit->add_option("--a", cp.a, "Potential exponent")->check(CLI::PositiveNumber);
  crit->add_option("--level", cp_level, "Contour level or 'auto'");
  crit->add_option("--window", cp_window, "x0,x1,y0,y1");
  crit->add_option("--grid", cp.grid_n, "Cells per side")->check(CLI::Range(2, 1 << 15));

  PhiOptions phi;
  std::optional<double> phi_B;
  auto* phicmd = app.add_subcommand("phi-profile", "Sample Phi(I) and mark the roots of Phi = -2B");
  phicmd->add_option("--H", phi.H, "Energy");
  phicmd->add_option("--mu", phi.mu, "Configurational measure")->check(CLI::NonNegativeNumber);
  phicmd->add_option("--a", phi.a, "Potential exponent")->check(CLI::PositiveNumber);
  phicmd->add_option("--B", phi_B, "First-integral constant")->check(CLI::NonNegativeNumber);
  phicmd->add_option("--I-min", phi.I_lo, "Smallest I")->check(CLI::PositiveNumber);
  phicmd->add_option("--I-max", phi.I_hi, "Largest I")->check(CLI::PositiveNumber);
  phicmd->add_option("--n", phi.n, "Samples")->check(CLI::Range(2, 10'000'000));

  SeriesOptions series;
  auto* ser = app.add_subcommand("series-check", "Fit the critical-path series and limits (exit 5 on breach)");
  ser->add_option("--max-x", series.max_x, "Half-width of the fit window")->check(CLI::PositiveNumber);
  ser->add_option("--grid", series.grid_n, "Cells per side")->check(CLI::Range(2, 1 << 15));

  std::string cc_masses = "1,1,1";
  double cc_a = 1.0;
  auto* cc = app.add_subcommand("central-configs", "List the five central configurations");
  cc->add_option("--masses", cc_masses, "m1,m2,m3");
  cc->add_option("--a", cc_a, "Potential exponent")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParse;
  }

  try {
    CommandResult result;
    if (*sim || *aud) {
      PreparedRun run = prepare(load_scenario(scenario_path));
      if (tol) {
        run.controls.rel_tol = *tol;
        run.controls.abs_tol = std::min(run.controls.abs_tol, *tol * 1e-2);
      }
      result = *sim ? cmd_simulate(run) : cmd_audit(run);
    } else if (*crit) {
      cp.masses = split_numbers(cp_masses, "--masses");
      if (cp_level != "auto") cp.level = split_numbers(cp_level, "--level").at(0);
      const auto w = split_numbers(cp_window, "--window");
      if (w.size() != 4) throw ParseError(0, "--window", "expected x0,x1,y0,y1");
      cp.window = {w[0], w[1], w[2], w[3]};
      result = cmd_critical_path(cp);
    } else if (*phicmd) {
      phi.B = phi_B;
      result = cmd_phi_profile(phi);
    } else if (*ser) {
      result = cmd_series_check(series);
    } else if (*cc) {
      result = cmd_central_configs(split_numbers(cc_masses, "--masses"), cc_a);
    }
    emit(result, out_dir, seed, seed_opt->count() > 0, out, err);
    return result.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::DegenerateExponent:
        return kParse;
      case ErrorKind::EmptyContour:
        return kEmpty;
      case ErrorKind::ToleranceFailure:
      case ErrorKind::CollisionSingularity:
        return kIntegration;
      default:
        return kFailure;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace tribody::cli

#include "tribody/cli/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "tribody/error.hpp"
#include "tribody/presets.hpp"

namespace tribody::cli {

ParseError::ParseError(std::size_t line, std::string field, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + field + ": " + what
                                  : field + ": " + what),
      line_(line),
      field_(std::move(field)) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view v, std::size_t line, const std::string& key) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw ParseError(line, key, "expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

std::vector<double> to_list(std::string_view v, std::size_t line, const std::string& key) {
  std::vector<double> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(to_double(v.substr(0, comma), line, key));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

double positive(double v, std::size_t line, const std::string& key) {
  if (!(v > 0.0)) throw ParseError(line, key, "must be positive");
  return v;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  using Setter = std::function<void(std::string_view, std::size_t, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"system.masses", [&](auto v, auto l, auto& k) { s.masses = to_list(v, l, k); }},
      {"system.a", [&](auto v, auto l, auto& k) { s.a = to_double(v, l, k); }},
      {"initial.preset",
       [&](auto v, auto l, auto& k) {
         const std::string name(trim(v));
         if (name != "lagrange_circular" && name != "euler_collinear_spin" &&
             name != "equilateral_freefall" && name != "custom") {
           throw ParseError(l, k, "unknown preset '" + name + "'");
         }
         s.preset = name;
       }},
      {"initial.positions", [&](auto v, auto l, auto& k) { s.positions = to_list(v, l, k); }},
      {"initial.momenta", [&](auto v, auto l, auto& k) { s.momenta = to_list(v, l, k); }},
      {"preset.side", [&](auto v, auto l, auto& k) { s.side = positive(to_double(v, l, k), l, k); }},
      {"preset.omega_scale", [&](auto v, auto l, auto& k) { s.omega_scale = to_double(v, l, k); }},
      {"preset.middle",
       [&](auto v, auto l, auto& k) {
         const double m = to_double(v, l, k);
         if (m != 1.0 && m != 2.0 && m != 3.0) throw ParseError(l, k, "must be 1, 2 or 3");
         s.middle = static_cast<int>(m);
       }},
      {"integrator.t_end", [&](auto v, auto l, auto& k) { s.controls.t_end = to_double(v, l, k); }},
      {"integrator.rel_tol",
       [&](auto v, auto l, auto& k) { s.controls.rel_tol = positive(to_double(v, l, k), l, k); }},
      {"integrator.abs_tol",
       [&](auto v, auto l, auto& k) { s.controls.abs_tol = positive(to_double(v, l, k), l, k); }},
      {"integrator.max_step",
       [&](auto v, auto l, auto& k) { s.controls.max_step = positive(to_double(v, l, k), l, k); }},
      {"output.stride",
       [&](auto v, auto l, auto& k) {
         const double d = to_double(v, l, k);
         if (!(d >= 1.0) || d != static_cast<double>(static_cast<std::size_t>(d))) {
           throw ParseError(l, k, "must be a positive integer");
         }
         s.stride = static_cast<std::size_t>(d);
       }},
  };

  std::size_t line_no = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, std::string(line), "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(line_no, key, "unknown key");
    if (s.lines.count(key)) throw ParseError(line_no, key, "repeated key");
    s.lines[key] = line_no;
    it->second(trim(line.substr(eq + 1)), line_no, key);
  }
  if (s.masses.empty()) throw ParseError(0, "system.masses", "missing");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, path, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

std::size_t line_of(const Scenario& s, const std::string& key) {
  const auto it = s.lines.find(key);
  return it == s.lines.end() ? 0 : it->second;
}

std::vector<Planar> planar_list(const Scenario& s, const std::vector<double>& v, std::size_t n,
                                const std::string& key) {
  if (v.size() != 2 * n) {
    throw ParseError(line_of(s, key), key,
                     "expected " + std::to_string(2 * n) + " numbers, got " + std::to_string(v.size()));
  }
  std::vector<Planar> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {v[2 * k], v[2 * k + 1]};
  return out;
}

std::string note(const char* name, double value) {
  std::ostringstream os;
  os.precision(17);
  os << name << " = " << value;
  return os.str();
}

}  // namespace

PreparedRun prepare(const Scenario& s) {
  std::optional<MassSystem> sys;
  try {
    sys.emplace(s.masses, s.a);
  } catch (const Error& e) {
    const std::string msg = e.what();
    const bool exponent = msg.find("exponent") != std::string::npos;
    const std::string key = exponent ? "system.a" : "system.masses";
    throw ParseError(line_of(s, key), key, msg);
  }
  const std::size_t n = sys->size();
  const bool three = n == 3;
  if (s.preset != "custom" && !three) {
    throw ParseError(line_of(s, "initial.preset"), "initial.preset", "presets need exactly three masses");
  }

  PhaseState init;
  std::vector<std::string> notes{"preset = " + s.preset};
  try {
    if (s.preset == "lagrange_circular") {
      init = lagrange_circular(*sys, s.side, s.omega_scale);
    } else if (s.preset == "euler_collinear_spin") {
      init = euler_collinear_spin(*sys, s.middle, s.side, s.omega_scale);
    } else if (s.preset == "equilateral_freefall") {
      init = equilateral_freefall(*sys, s.side);
    } else {
      init.q = planar_list(s, s.positions, n, "initial.positions");
      init.p = s.momenta.empty() ? std::vector<Planar>(n) : planar_list(s, s.momenta, n, "initial.momenta");
      init = reduce_to_barycenter(init, *sys);
    }
    check_separation(init.q, *sys);
  } catch (const Error& e) {
    const std::string key = s.preset == "custom" ? "initial.positions" : "initial.preset";
    throw ParseError(line_of(s, key), key, e.what());
  }

  if (s.preset != "custom") {
    const ScalarDiagnostics d = scalar_diagnostics(init, *sys);
    notes.push_back(note("expected mu", d.mu));
    notes.push_back(note("expected C", d.C));
    notes.push_back(note("expected H", d.H));
    notes.push_back(note("expected B", d.B));
  }
  IntegratorControls c = s.controls;
  c.sample_stride = s.stride;
  return {*sys, init, c, notes};
}

}  // namespace tribody::cli

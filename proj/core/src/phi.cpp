#include <algorithm>
#include <cmath>

#include "tribody/error.hpp"
#include "tribody/integrate.hpp"
#include "tribody/numerics.hpp"

namespace tribody {

const char* to_string(OrbitCategory c) {
  switch (c) {
    case OrbitCategory::TotalCollision: return "TotalCollision";
    case OrbitCategory::Unbounded: return "Unbounded";
    case OrbitCategory::Oscillatory: return "Oscillatory";
  }
  return "Unknown";
}

namespace {

void require_exponent(double a) {
  if (a == 2.0) {
    throw Error(ErrorKind::DegenerateExponent, "Phi(I) is undefined for a = 2");
  }
}

}  // namespace

double phi_of_I(double I, double H, double mu, double a) {
  require_exponent(a);
  if (!(I > 0.0)) throw Error(ErrorKind::InvalidArgument, "Phi(I) needs I > 0");
  return -4.0 * H * I - 4.0 * mu * std::pow(I, 0.5 * (2.0 - a));
}

double phi_derivative(double I, double H, double mu, double a) {
  require_exponent(a);
  if (!(I > 0.0)) throw Error(ErrorKind::InvalidArgument, "Phi'(I) needs I > 0");
  return -4.0 * H - 2.0 * (2.0 - a) * mu * std::pow(I, -0.5 * a);
}

TurningPoints turning_points(const PhiProfile& profile, double I_ref) {
  const double H = profile.H, mu = profile.mu, a = profile.a, B = profile.B;
  require_exponent(a);
  if (B < 0.0) throw Error(ErrorKind::InvalidArgument, "turning_points needs B >= 0");
  if (!(I_ref > 0.0)) throw Error(ErrorKind::InvalidArgument, "turning_points needs I_ref > 0");

  TurningPoints out;
  const double lo = 1e-12 * I_ref;
  const double hi = 1e12 * I_ref;

  if (B == 0.0 && a < 2.0) {
    out.I_min = 0.0;
    if (H < 0.0 && mu > 0.0) out.I_max = std::pow(mu / -H, 2.0 / a);
    return out;
  }

  auto F = [&](double I) { return phi_of_I(I, H, mu, a) + 2.0 * B; };
  auto dF = [&](double I) { return phi_derivative(I, H, mu, a); };

  // For H < 0 and a < 2, Phi has a single interior minimum; check it for tangency
  // and use it to split the scan so both roots are bracketed cleanly.
  std::vector<double> splits{lo};
  if (H < 0.0 && a < 2.0 && mu > 0.0) {
    const double I_star = std::pow(mu * (2.0 - a) / (-2.0 * H), 2.0 / a);
    const double scale = std::max({1.0, std::abs(4.0 * H * I_star), 2.0 * B});
    const double F_star = F(I_star);
    if (std::abs(F_star) <= 1e-10 * scale) {
      out.I_min = I_star;
      out.I_max = I_star;
      out.double_root = true;
      return out;
    }
    if (F_star > 0.0) {
      out.no_root = true;
      return out;
    }
    if (I_star > lo && I_star < hi) splits.push_back(I_star);
  }
  splits.push_back(hi);

  std::vector<double> roots;
  for (std::size_t s = 0; s + 1 < splits.size(); ++s) {
    const double l = splits[s], h = splits[s + 1];
    for (const auto& br : numerics::scan_geometric(F, l, h, 1200)) {
      roots.push_back(br.lo == br.hi ? br.lo : numerics::solve_bracketed(F, dF, br.lo, br.hi));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  if (roots.empty()) {
    out.no_root = true;
    return out;
  }
  out.I_min = roots.front();
  if (H < 0.0 && roots.size() > 1) out.I_max = roots.back();
  return out;
}

PhiProfile with_turning_points(PhiProfile profile, double I_ref) {
  const TurningPoints tp = turning_points(profile, I_ref);
  profile.I_min = tp.I_min;
  profile.I_max = tp.I_max;
  return profile;
}

OrbitCategory categorize_orbit(const ScalarDiagnostics& diag, const MassSystem& sys) {
  if (sys.exponent() >= 2.0) {
    throw Error(ErrorKind::DegenerateExponent, "orbit categories need 0 < a < 2");
  }
  if (diag.B <= 1e-9 * std::max(1.0, 2.0 * diag.I * diag.T)) return OrbitCategory::TotalCollision;
  return diag.H >= 0.0 ? OrbitCategory::Unbounded : OrbitCategory::Oscillatory;
}

}  // namespace tribody

#include "tribody/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tribody/error.hpp"

namespace tribody {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CollisionSingularity: return "CollisionSingularity";
    case ErrorKind::DegenerateExponent: return "DegenerateExponent";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::ToleranceFailure: return "ToleranceFailure";
    case ErrorKind::ZeroInertia: return "ZeroInertia";
    case ErrorKind::NegativeRhoSquared: return "NegativeRhoSquared";
    case ErrorKind::SundmanViolation: return "SundmanViolation";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DegenerateShape: return "DegenerateShape";
    case ErrorKind::CentralConfiguration: return "CentralConfiguration";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::EmptyContour: return "EmptyContour";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::NotAsymptotic: return "NotAsymptotic";
  }
  return "Unknown";
}

MassSystem::MassSystem(std::vector<double> masses, double exponent)
    : masses_(std::move(masses)), exponent_(exponent) {
  if (masses_.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "masses: need at least three bodies");
  }
  for (std::size_t k = 0; k < masses_.size(); ++k) {
    if (!(masses_[k] > 0.0) || !std::isfinite(masses_[k])) {
      std::ostringstream os;
      os << "masses: entry " << k + 1 << " must be positive and finite (got " << masses_[k] << ")";
      throw Error(ErrorKind::InvalidArgument, os.str());
    }
  }
  if (!(exponent_ > 0.0) || !std::isfinite(exponent_)) {
    throw Error(ErrorKind::InvalidArgument, "exponent a must be positive and finite");
  }
  total_mass_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

double MassSystem::mass_product() const {
  return std::accumulate(masses_.begin(), masses_.end(), 1.0, std::multiplies<>{});
}

std::vector<BodyPair> body_pairs(std::size_t n) {
  if (n == 3) return {{0, 1}, {1, 2}, {2, 0}};
  std::vector<BodyPair> pairs;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) pairs.push_back({j, k});
  }
  return pairs;
}

namespace {

void require_size(std::span<const Planar> v, const MassSystem& sys, const char* what) {
  if (v.size() != sys.size()) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + ": body count does not match the mass system");
  }
}

}  // namespace

PhaseState reduce_to_barycenter(const PhaseState& state, const MassSystem& sys) {
  require_size(state.q, sys, "positions");
  require_size(state.p, sys, "momenta");
  const double M = sys.total_mass();
  Planar centre{};
  Planar total_p{};
  for (std::size_t k = 0; k < sys.size(); ++k) {
    centre += sys.mass(k) * state.q[k];
    total_p += state.p[k];
  }
  centre /= M;

  PhaseState out = state;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    out.q[k] -= centre;
    out.p[k] -= (sys.mass(k) / M) * total_p;
  }
  return out;
}

double moment_of_inertia(std::span<const Planar> q, const MassSystem& sys) {
  require_size(q, sys, "positions");
  double I = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) I += sys.mass(k) * norm2(q[k]);
  return I;
}

double moment_of_inertia_pairwise(std::span<const Planar> q, const MassSystem& sys) {
  require_size(q, sys, "positions");
  double s = 0.0;
  for (auto [j, k] : body_pairs(q.size())) s += sys.mass(j) * sys.mass(k) * norm2(q[j] - q[k]);
  return s / sys.total_mass();
}

void check_separation(std::span<const Planar> q, const MassSystem& sys) {
  const double limit = kCollisionRatio * std::sqrt(moment_of_inertia_pairwise(q, sys));
  for (auto [j, k] : body_pairs(q.size())) {
    const double r = std::abs(q[j] - q[k]);
    if (!(r >= limit) || r == 0.0) {
      std::ostringstream os;
      os << "bodies " << j + 1 << " and " << k + 1 << " at distance " << r;
      throw Error(ErrorKind::CollisionSingularity, os.str());
    }
  }
}

double potential_energy(std::span<const Planar> q, const MassSystem& sys) {
  check_separation(q, sys);
  const double a = sys.exponent();
  double s = 0.0;
  for (auto [j, k] : body_pairs(q.size())) {
    s += sys.mass(j) * sys.mass(k) / std::pow(std::abs(q[j] - q[k]), a);
  }
  return s / a;
}

double potential_energy(const PhaseState& state, const MassSystem& sys) {
  return potential_energy(state.q, sys);
}

std::vector<Planar> forces(std::span<const Planar> q, const MassSystem& sys) {
  check_separation(q, sys);
  const double a = sys.exponent();
  std::vector<Planar> g(q.size());
  for (auto [j, k] : body_pairs(q.size())) {
    const Planar d = q[j] - q[k];
    const Planar f = (sys.mass(j) * sys.mass(k) / std::pow(std::abs(d), a + 2.0)) * d;
    g[k] += f;
    g[j] -= f;
  }
  return g;
}

std::vector<Planar> forces(const PhaseState& state, const MassSystem& sys) {
  return forces(state.q, sys);
}

double kinetic_energy(std::span<const Planar> p, const MassSystem& sys) {
  require_size(p, sys, "momenta");
  double T = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) T += norm2(p[k]) / sys.mass(k);
  return 0.5 * T;
}

double angular_momentum(std::span<const Planar> q, std::span<const Planar> p) {
  double C = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) C += wedge(q[k], p[k]);
  return C;
}

double configurational_measure(std::span<const Planar> q, const MassSystem& sys) {
  return potential_energy(q, sys) * std::pow(moment_of_inertia_pairwise(q, sys), 0.5 * sys.exponent());
}

ScalarDiagnostics scalar_diagnostics(const PhaseState& state, const MassSystem& sys) {
  require_size(state.p, sys, "momenta");
  ScalarDiagnostics d;
  d.U = potential_energy(state.q, sys);
  d.T = kinetic_energy(state.p, sys);
  d.H = d.T - d.U;
  d.I = moment_of_inertia(state.q, sys);
  double qp = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) qp += dot(state.q[k], state.p[k]);
  d.dIdt = 2.0 * qp;
  d.C = angular_momentum(state.q, state.p);
  d.mu = d.U * std::pow(d.I, 0.5 * sys.exponent());
  d.B = 2.0 * d.I * d.T - qp * qp;
  return d;
}

std::vector<DistanceBounds> mutual_distance_bounds(double mu, double I, const MassSystem& sys) {
  if (!(mu > 0.0) || !(I > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "mutual_distance_bounds needs mu > 0 and I > 0");
  }
  const double a = sys.exponent();
  std::vector<DistanceBounds> out;
  for (auto [j, k] : body_pairs(sys.size())) {
    const double mm = sys.mass(j) * sys.mass(k);
    out.push_back({std::pow(mm / (a * mu), 2.0 / a) * I, sys.total_mass() / mm * I});
  }
  return out;
}

}  // namespace tribody

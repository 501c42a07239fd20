#include "tribody/presets.hpp"

#include <cmath>
#include <numbers>

#include "tribody/central_config.hpp"
#include "tribody/error.hpp"

namespace tribody {

namespace {

PhaseState at_rest(std::span<const Planar> q, const MassSystem& sys) {
  PhaseState s;
  s.q.assign(q.begin(), q.end());
  s.p.assign(q.size(), Planar{});
  return reduce_to_barycenter(s, sys);
}

PhaseState equilateral(const MassSystem& sys, double side) {
  if (sys.size() != 3) throw Error(ErrorKind::InvalidArgument, "presets need three bodies");
  if (!(side > 0.0)) throw Error(ErrorKind::InvalidArgument, "side must be positive");
  const double h = std::numbers::sqrt3 / 2.0 * side;
  const Planar q[] = {{-0.5 * side, 0.0}, {0.5 * side, 0.0}, {0.0, h}};
  return at_rest(q, sys);
}

void spin(PhaseState& s, const MassSystem& sys, double omega) {
  for (std::size_t k = 0; k < s.q.size(); ++k) s.p[k] = sys.mass(k) * omega * kI * s.q[k];
}

}  // namespace

PhaseState lagrange_circular(const MassSystem& sys, double side, double omega_scale) {
  PhaseState s = equilateral(sys, side);
  const double omega = omega_scale * std::sqrt(sys.total_mass() / std::pow(side, sys.exponent() + 2.0));
  spin(s, sys, omega);
  return s;
}

PhaseState euler_collinear_spin(const MassSystem& sys, int middle_index, double size,
                                double omega_scale) {
  if (!(size > 0.0)) throw Error(ErrorKind::InvalidArgument, "size must be positive");
  const CentralConfigResult cc = euler_collinear(sys, middle_index);
  std::vector<Planar> q = cc.shape;
  for (auto& v : q) v *= size;
  PhaseState s = at_rest(q, sys);
  const double I = moment_of_inertia(s.q, sys);
  const double lambda = sys.exponent() * potential_energy(s.q, sys) / I;
  spin(s, sys, omega_scale * std::sqrt(lambda));
  return s;
}

PhaseState equilateral_freefall(const MassSystem& sys, double side) {
  return equilateral(sys, side);
}

PhaseState homothetic_escape(const MassSystem& sys, std::span<const Planar> shape, double H) {
  PhaseState s = at_rest(shape, sys);
  const double U = potential_energy(s.q, sys);
  const double I = moment_of_inertia(s.q, sys);
  if (!(U + H > 0.0)) throw Error(ErrorKind::InvalidArgument, "homothetic escape needs U + H > 0");
  const double lambda = std::sqrt(2.0 * (U + H) / I);
  for (std::size_t k = 0; k < s.q.size(); ++k) s.p[k] = lambda * sys.mass(k) * s.q[k];
  return s;
}

}  // namespace tribody

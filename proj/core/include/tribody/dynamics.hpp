#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tribody/planar.hpp"

namespace tribody {

/// Point masses interacting through the homogeneous potential
/// U = (1/a) sum_{j<k} m_j m_k / r_jk^a.
class MassSystem {
 public:
  /// Throws Error(InvalidArgument) unless there are at least three bodies,
  /// every mass is positive and finite, and a > 0.
  MassSystem(std::vector<double> masses, double exponent);

  std::size_t size() const noexcept { return masses_.size(); }
  std::span<const double> masses() const noexcept { return masses_; }
  double mass(std::size_t k) const { return masses_[k]; }
  double total_mass() const noexcept { return total_mass_; }
  double exponent() const noexcept { return exponent_; }

  /// a = 2 makes the moment-of-inertia first integral degenerate.
  bool degenerate_exponent() const noexcept { return exponent_ == 2.0; }

  /// m1 m2 m3 for three bodies.
  double mass_product() const;

 private:
  std::vector<double> masses_;
  double total_mass_ = 0.0;
  double exponent_ = 1.0;
};

struct PhaseState {
  std::vector<Planar> q;  // positions
  std::vector<Planar> p;  // momenta, p_k = m_k dq_k/dt
  double t = 0.0;
};

struct ScalarDiagnostics {
  double U = 0.0;     // potential (positive)
  double T = 0.0;     // kinetic
  double H = 0.0;     // T - U
  double I = 0.0;     // sum m |q|^2
  double dIdt = 0.0;  // 2 sum q . p
  double C = 0.0;     // sum q ^ p
  double mu = 0.0;    // U I^{a/2}
  double B = 0.0;     // 2 I T - (sum q . p)^2
};

struct DistanceBounds {
  double lower = 0.0;  // bound on r_jk^2 from below
  double upper = 0.0;  // bound on r_jk^2 from above
};

/// Unordered pairs in the order (0,1), (1,2), (2,0) for three bodies, and
/// lexicographic j<k for larger n.
struct BodyPair {
  std::size_t j;
  std::size_t k;
};
std::vector<BodyPair> body_pairs(std::size_t n);

/// Ratio of the smallest allowed mutual distance to sqrt(I).
inline constexpr double kCollisionRatio = 1e-8;

/// Shift to the centre of mass and the zero-momentum frame.
PhaseState reduce_to_barycenter(const PhaseState& state, const MassSystem& sys);

double moment_of_inertia(std::span<const Planar> q, const MassSystem& sys);
/// M^{-1} sum_{j<k} m_j m_k r_jk^2, translation invariant.
double moment_of_inertia_pairwise(std::span<const Planar> q, const MassSystem& sys);

/// Throws Error(CollisionSingularity) when some r_jk < kCollisionRatio sqrt(I).
void check_separation(std::span<const Planar> q, const MassSystem& sys);

double potential_energy(std::span<const Planar> q, const MassSystem& sys);
double potential_energy(const PhaseState& state, const MassSystem& sys);

/// g_k = sum_{j != k} m_j m_k (q_j - q_k) / r_jk^{a+2}.
std::vector<Planar> forces(std::span<const Planar> q, const MassSystem& sys);
std::vector<Planar> forces(const PhaseState& state, const MassSystem& sys);

double kinetic_energy(std::span<const Planar> p, const MassSystem& sys);
double angular_momentum(std::span<const Planar> q, std::span<const Planar> p);

/// mu = U I^{a/2}; scale and rotation invariant.
double configurational_measure(std::span<const Planar> q, const MassSystem& sys);

ScalarDiagnostics scalar_diagnostics(const PhaseState& state, const MassSystem& sys);

/// Squared-distance bounds implied by a fixed configurational measure, one
/// entry per pair in body_pairs order.
std::vector<DistanceBounds> mutual_distance_bounds(double mu, double I, const MassSystem& sys);

}  // namespace tribody

#pragma once

#include <array>
#include <span>
#include <vector>

#include "tribody/dynamics.hpp"
#include "tribody/integrate.hpp"

namespace tribody {

/// A configuration seen in shape coordinates
///   Q_k = exp(-i theta) q_k / sqrt(I),   P_k = m_k dQ_k/dtau = I m_k dQ_k/dt,
/// together with the physical scalars it was built from. The three-body
/// fields (G, Delta, rho, kappa, E) are left empty for n != 3.
struct ShapeFrame {
  double t = 0.0;
  double tau = 0.0;
  double theta = 0.0;
  double I_phys = 1.0;
  double dIdt = 0.0;
  double C = 0.0;
  double B = 0.0;
  double mu = 0.0;  // U(Q), equal to U(q) I(q)^{a/2}
  std::vector<Planar> Q;
  std::vector<Planar> P;

  std::vector<Planar> G;       // g_k(Q) + a mu m_k Q_k
  double Delta = 0.0;          // Q1^Q2 + Q2^Q3 + Q3^Q1
  double rho = 0.0;
  double kappa = 0.0;          // sqrt(m1 m2 m3 max(B - C^2, 0) / M)
  std::array<double, 3> E{};   // E_l for the pair opposite body l
};

/// Frame of one augmented sample; theta is taken from the sample.
/// Throws Error(ZeroInertia) if I <= 0.
ShapeFrame frame_from_state(const AugmentedState& s, const MassSystem& sys);

std::vector<ShapeFrame> to_shape_frames(const Trajectory& traj);

/// Static frame for a bare shape: the points are moved to the barycenter and
/// scaled to I = 1; P = 0, I_phys = 1 and mu = U(Q).
ShapeFrame frame_from_shape(std::span<const Planar> points, const MassSystem& sys);

/// Recomputes G, Delta, rho, E (with mu = U(Q)) after Q has been edited.
void refresh_shape_quantities(ShapeFrame& frame, const MassSystem& sys);

/// sum |P_k|^2 / m_k.
double shape_kinetic(const ShapeFrame& frame, const MassSystem& sys);

/// G_k = g_k(Q) + a mu m_k Q_k.
std::vector<Planar> G_of_Q(std::span<const Planar> Q, const MassSystem& sys, double mu);

/// rho = sqrt((m1 m2 m3 / M) sum |G_l|^2 / m_l) and, independently,
/// rho^2 = -(E1 E2 + E2 E3 + E3 E1) with E_l = m_j m_k (r_jk^{-(a+2)} - a mu / M).
/// The second route assumes I(Q) = 1 and mu = U(Q).
struct RhoRoutes {
  double rho = 0.0;       // from G
  double rho2_G = 0.0;
  double rho2_E = 0.0;
  std::array<double, 3> E{};
};

/// Throws Error(NegativeRhoSquared) if the E route gives rho^2 well below zero.
RhoRoutes rho_of(std::span<const Planar> Q, const MassSystem& sys, double mu);

/// Throws Error(SundmanViolation) when B < C^2 - 1e-9.
double kappa_of(double B, double C, const MassSystem& sys);

/// Largest rho treated as "at a central configuration".
double central_rho_threshold(const MassSystem& sys, double mu);

/// zeta with eta_l = zeta (conj(xi_j) - conj(xi_k)) for (j, k, l) cyclic.
struct Similarity {
  Planar zeta;
  double residual = 0.0;  // max_l |eta_l - zeta (conj xi_j - conj xi_k)|
};

/// Throws Error(PreconditionViolated) unless sum conj(xi) eta = 0 and
/// sum eta = 0, and Error(DegenerateShape) when the xi coincide.
Similarity similarity_factor(std::span<const Planar> xi, std::span<const Planar> eta,
                             const MassSystem& sys);

/// P_k = eps (kappa / rho) i G_k. Throws Error(CentralConfiguration) at rho ~ 0.
std::vector<Planar> candidate_momenta(std::span<const Planar> Q, const MassSystem& sys, double mu,
                                      double kappa, int epsilon);

/// dr_jk/dtau indexed like body_pairs(3): pair i = (i, i+1 mod 3), l = i+2 mod 3.
/// Valid for any momenta in the I(Q) = 1 gauge.
std::array<double, 3> dr_dtau_general(std::span<const Planar> Q, std::span<const Planar> P,
                                      const MassSystem& sys);

/// Same quantity when P comes from candidate_momenta(Q, sys, mu, kappa, epsilon).
std::array<double, 3> dr_dtau_candidate(std::span<const Planar> Q, const MassSystem& sys,
                                        double mu, double kappa, int epsilon);

/// Q_l ^ G_l per body l, directly and from the closed form
/// (m1 m2 m3 Delta / M)(r_lj^{-(a+2)} - r_kl^{-(a+2)}).
std::array<double, 3> torque_direct(std::span<const Planar> Q, const MassSystem& sys);
std::array<double, 3> torque_formula(std::span<const Planar> Q, const MassSystem& sys);

/// Twice the oriented area of the triangle Q1 Q2 Q3.
double oriented_area2(std::span<const Planar> Q);

/// d/dt(sum |P|^2/m) - 2 I^{1-a/2} dmu/dt at the interior samples (every
/// `stride`-th), both derivatives from five-point differences over short
/// propagations off the sample with step local_difference_step(q, sys, delta),
/// normalised by max(1, |2 I^{1-a/2} dmu/dt|).
std::vector<double> saari_relation_residual(const Trajectory& traj, double delta = 1e-3,
                                            std::size_t stride = 1);

}  // namespace tribody

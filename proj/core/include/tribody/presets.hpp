#pragma once

#include <span>

#include "tribody/dynamics.hpp"

namespace tribody {

/// Equilateral triangle of side `side` rotating rigidly at
/// omega = omega_scale * sqrt(M / side^{a+2}). omega_scale = 1 is the
/// relative equilibrium.
PhaseState lagrange_circular(const MassSystem& sys, double side = 1.0, double omega_scale = 1.0);

/// Collinear central configuration with body `middle_index` (1-based) in the
/// middle, scaled to I = size^2 and rotating at omega_scale * sqrt(a U / I).
PhaseState euler_collinear_spin(const MassSystem& sys, int middle_index, double size = 1.0,
                                double omega_scale = 1.0);

/// Equilateral triangle of side `side` released from rest.
PhaseState equilateral_freefall(const MassSystem& sys, double side = 1.0);

/// Radial motion p_k = lambda m_k q_k out of the given shape, with lambda > 0
/// chosen so the energy equals H. Throws Error(InvalidArgument) if U + H <= 0.
PhaseState homothetic_escape(const MassSystem& sys, std::span<const Planar> shape, double H);

}  // namespace tribody

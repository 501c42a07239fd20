#pragma once

#include <complex>

namespace tribody {

// Points and vectors in the plane are complex numbers: x + iy.
// Multiplying by i is the quarter turn, std::conj flips the second component.
using Planar = std::complex<double>;

inline constexpr Planar kI{0.0, 1.0};

inline double dot(Planar a, Planar b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Outer product a ^ b = a_x b_y - a_y b_x, so conj(a) * b = dot(a, b) + i wedge(a, b).
inline double wedge(Planar a, Planar b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline double norm2(Planar a) { return std::norm(a); }

}  // namespace tribody

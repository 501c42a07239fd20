#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace tribody::numerics {

using ScalarFn = std::function<double(double)>;

struct Bracket {
  double lo;
  double hi;
};

/// Sign changes of f over a geometric grid of `samples` points in [lo, hi]
/// (0 < lo < hi). Grid points where f is exactly zero open a degenerate bracket
/// [x, x].
std::vector<Bracket> scan_geometric(const ScalarFn& f, double lo, double hi, int samples);

/// Root of f inside [lo, hi], where f(lo) and f(hi) differ in sign.
/// Newton steps (using df) are taken while they stay inside the shrinking
/// bracket; otherwise the interval is bisected. Stops once the bracket is
/// narrower than xtol * max(1, |x|) or f vanishes.
/// Throws Error(RootNotBracketed) if the endpoints share a sign.
double solve_bracketed(const ScalarFn& f, const ScalarFn& df, double lo, double hi,
                       double xtol = 1e-15, int max_iter = 400);

/// Same, with a central-difference derivative.
double solve_bracketed(const ScalarFn& f, double lo, double hi, double xtol = 1e-15,
                       int max_iter = 400);

/// Richardson table for samples taken at h_k = h_0 / 2^k. The error is assumed
/// to expand in h^{p}, h^{2p}, h^{3p}, ... with p = `power_step`.
/// Returns the most extrapolated entry together with the difference to the
/// previous diagonal, a crude error estimate.
struct Extrapolated {
  double value;
  double error_estimate;
};
Extrapolated richardson_halving(std::span<const double> values, int power_step);

/// Least-squares coefficients c for y ~ sum_i c_i x^{powers_i}.
struct PolyFit {
  std::vector<double> coefficients;
  double rms_residual;
};
PolyFit fit_monomials(std::span<const double> x, std::span<const double> y,
                      std::span<const int> powers);

/// Integral of f over [a, b] with tanh-sinh quadrature; tolerates integrable
/// endpoint singularities.
double integrate_tanh_sinh(const ScalarFn& f, double a, double b, double rel_tol = 1e-12);

}  // namespace tribody::numerics

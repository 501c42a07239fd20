#include "tribody/numerics.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "tribody/error.hpp"

namespace tribody::numerics {

std::vector<Bracket> scan_geometric(const ScalarFn& f, double lo, double hi, int samples) {
  if (!(lo > 0.0) || !(hi > lo) || samples < 2) {
    throw Error(ErrorKind::InvalidArgument, "scan_geometric needs 0 < lo < hi and samples >= 2");
  }
  std::vector<Bracket> out;
  const double ratio = std::pow(hi / lo, 1.0 / (samples - 1));
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) out.push_back({lo, lo});
  for (int i = 1; i < samples; ++i) {
    const double x = (i == samples - 1) ? hi : lo * std::pow(ratio, i);
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back({x, x});
    } else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

double solve_bracketed(const ScalarFn& f, const ScalarFn& df, double lo, double hi, double xtol,
                       int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw Error(ErrorKind::RootNotBracketed, "no sign change on the bracket");
  }
  // Orient so that f(lo) < 0 < f(hi).
  if (flo > 0.0) std::swap(lo, hi);

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) lo = x; else hi = x;

    const double width = std::abs(hi - lo);
    if (width <= xtol * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);

    const double d = df ? df(x) : 0.0;
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
    const double left = std::min(lo, hi);
    const double right = std::max(lo, hi);
    if (!(next > left && next < right)) next = 0.5 * (lo + hi);
    if (next == x) return x;
    x = next;
  }
  return x;
}

double solve_bracketed(const ScalarFn& f, double lo, double hi, double xtol, int max_iter) {
  const double span = std::abs(hi - lo);
  auto df = [&f, span](double x) {
    const double h = 1e-7 * std::max(span, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  return solve_bracketed(f, df, lo, hi, xtol, max_iter);
}

Extrapolated richardson_halving(std::span<const double> values, int power_step) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "richardson: no samples");
  if (power_step < 1) throw Error(ErrorKind::InvalidArgument, "richardson: power_step < 1");
  const std::size_t n = values.size();
  std::vector<std::vector<double>> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    table[i].resize(i + 1);
    table[i][0] = values[i];
    for (std::size_t j = 1; j <= i; ++j) {
      const double factor = std::pow(2.0, static_cast<double>(power_step * j));
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
    }
  }
  const double best = table[n - 1][n - 1];
  const double err = n > 1 ? std::abs(best - table[n - 2][n - 2]) : std::numeric_limits<double>::infinity();
  return {best, err};
}

PolyFit fit_monomials(std::span<const double> x, std::span<const double> y,
                      std::span<const int> powers) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "fit: x/y size mismatch");
  if (x.size() < powers.size()) throw Error(ErrorKind::InsufficientPoints, "fit: underdetermined");
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  // Columns are built in the scaled variable x/scale to keep the system well conditioned.
  const auto rows = static_cast<Eigen::Index>(x.size());
  const auto cols = static_cast<Eigen::Index>(powers.size());
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double u = x[static_cast<std::size_t>(i)] / scale;
    for (Eigen::Index c = 0; c < cols; ++c) A(i, c) = std::pow(u, powers[static_cast<std::size_t>(c)]);
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);

  PolyFit fit;
  fit.coefficients.resize(powers.size());
  for (Eigen::Index c = 0; c < cols; ++c) {
    fit.coefficients[static_cast<std::size_t>(c)] =
        coef(c) / std::pow(scale, powers[static_cast<std::size_t>(c)]);
  }
  fit.rms_residual = std::sqrt((A * coef - b).squaredNorm() / static_cast<double>(rows));
  return fit;
}

double integrate_tanh_sinh(const ScalarFn& f, double a, double b, double rel_tol) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([&f](double x) { return f(x); }, a, b, rel_tol);
}

}  // namespace tribody::numerics

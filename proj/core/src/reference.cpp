#include "hermsv/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hermsv {

double shock_time() { return std::sqrt(std::exp(1.0) / 2.0); }

double exact_pre_shock(double x, double t, const CharacteristicSolution& sol) {
  if (!(t >= 0.0) || t >= shock_time()) {
    throw std::domain_error("exact_pre_shock: requires 0 <= t < T* = " +
                            std::to_string(shock_time()) + ", got t = " +
                            std::to_string(t));
  }
  if (t == 0.0) return std::exp(-x * x);

  // Root of g(eta) = eta + t e^{-eta^2} - x. Since 0 < e^{-eta^2} <= 1 the
  // root lies in [x-t, x], and g' = 1 - 2 t eta e^{-eta^2} > 0 pre-shock.
  double lo = x - t, hi = x;
  auto g = [&](double eta) { return eta + t * std::exp(-eta * eta) - x; };
  double eta = 0.5 * (lo + hi);
  double res = g(eta);
  for (int it = 0; it < sol.max_iter; ++it) {
    if (std::abs(res) <= sol.newton_tol) return std::exp(-eta * eta);
    if (res > 0.0) {
      hi = eta;
    } else {
      lo = eta;
    }
    const double deriv = 1.0 - 2.0 * t * eta * std::exp(-eta * eta);
    double next = eta - res / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    eta = next;
    res = g(eta);
  }
  if (std::abs(res) <= sol.newton_tol) return std::exp(-eta * eta);
  throw std::runtime_error(
      "exact_pre_shock: no convergence after " + std::to_string(sol.max_iter) +
      " iterations, residual = " + std::to_string(res));
}

void FVOracle::validate() const {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("FVOracle: half_width must be > 0");
  }
  if (cell_count < 3 || cell_count % 2 == 0) {
    throw std::invalid_argument("FVOracle: cell_count must be odd and >= 3, got " +
                                std::to_string(cell_count));
  }
  if (!(cfl > 0.0) || cfl > 0.9) {
    throw std::invalid_argument("FVOracle: cfl must lie in (0, 0.9]");
  }
}

double FVProfile::interpolate(double xq) const {
  if (x.empty()) return 0.0;
  // The profile is below 1e-30 near the boundary for every use here.
  if (xq < x.front() || xq > x.back()) return 0.0;
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  if (it == x.begin()) return u.front();
  if (it == x.end()) return u.back();
  const size_t i = static_cast<size_t>(it - x.begin());
  const double w = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - w) * u[i - 1] + w * u[i];
}

double FVProfile::total_variation() const {
  double tv = 0.0;
  for (size_t i = 0; i + 1 < u.size(); ++i) tv += std::abs(u[i + 1] - u[i]);
  return tv;
}

double FVProfile::mass() const {
  double m = 0.0;
  for (double v : u) m += v;
  return m * dx;
}

namespace {

// Godunov flux for f(u) = u^2/2 (exact Riemann solver, convex flux with
// minimum at 0).
inline double godunov_flux(double ul, double ur) {
  const double a = std::max(ul, 0.0);
  const double b = std::min(ur, 0.0);
  return std::max(0.5 * a * a, 0.5 * b * b);
}

}  // namespace

FVProfile fv_reference(double t, const FVOracle& oracle) {
  oracle.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("fv_reference: t must be >= 0");

  const int n = oracle.cell_count;
  const double L = oracle.half_width;
  const double dx = 2.0 * L / n;

  FVProfile prof;
  prof.t = t;
  prof.dx = dx;
  prof.x.resize(static_cast<size_t>(n));
  prof.u.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double xc = -L + (i + 0.5) * dx;
    prof.x[static_cast<size_t>(i)] = xc;
    prof.u[static_cast<size_t>(i)] = std::exp(-xc * xc);
  }

  std::vector<double>& u = prof.u;
  std::vector<double> flux(static_cast<size_t>(n) + 1);
  double now = 0.0;
  while (now < t) {
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    double dt = oracle.cfl * dx / std::max(umax, 1e-12);
    dt = std::min(dt, t - now);

    // Zero-gradient ghost cells; boundary data is ~e^{-L^2}.
    flux[0] = godunov_flux(u[0], u[0]);
    for (int i = 1; i < n; ++i) {
      flux[static_cast<size_t>(i)] =
          godunov_flux(u[static_cast<size_t>(i) - 1], u[static_cast<size_t>(i)]);
    }
    flux[static_cast<size_t>(n)] = godunov_flux(u.back(), u.back());

    const double r = dt / dx;
    for (int i = 0; i < n; ++i) {
      u[static_cast<size_t>(i)] -=
          r * (flux[static_cast<size_t>(i) + 1] - flux[static_cast<size_t>(i)]);
    }
    now += dt;
  }
  return prof;
}

}  // namespace hermsv

#include "hermsv/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hermsv/transform.hpp"

namespace hermsv {

double norm_L2(const CoeffVec& u) {
  double sum = 0.0;
  for (double v : u.values) sum += v * v;
  return std::sqrt(sum);
}

double norm_Dx(const CoeffVec& u) {
  double sum = 0.0;
  for (int n = 0; n <= u.spec.n_max; ++n) {
    const double v = u[n];
    sum += lambda(u.spec, n) * v * v;
  }
  return std::sqrt(sum);
}

double norm_xweighted(const CoeffVec& u) { return norm_L2(op_x(u)); }

double norm_x2_L1(const CoeffVec& u, double L, double dx) {
  if (!(L > 0.0) || !(dx > 0.0)) {
    throw std::invalid_argument("norm_x2_L1: L and dx must be positive");
  }
  const int n_pts = static_cast<int>(std::floor(2.0 * L / dx + 0.5)) + 1;
  double sum = 0.0;
  for (int i = 0; i < n_pts; ++i) {
    const double x = -L + i * dx;
    const double v = std::abs(x * x * eval_series(u, x));
    sum += (i == 0 || i == n_pts - 1) ? 0.5 * v : v;
  }
  return sum * dx;
}

double time_integrate(const NormSeries& series) {
  const size_t n = series.times.size();
  if (n != series.values.size()) {
    throw std::invalid_argument("time_integrate: times/values length mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("time_integrate: need at least two samples");
  }
  const bool squared = series.label != NormLabel::x2L1;
  double sum = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double a = squared ? series.values[i] * series.values[i] : series.values[i];
    const double b = squared ? series.values[i + 1] * series.values[i + 1]
                             : series.values[i + 1];
    sum += 0.5 * (a + b) * (series.times[i + 1] - series.times[i]);
  }
  return sum;
}

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("fit_growth: need at least two points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [N, v] : points) {
    if (!(v > 0.0) || !(N > 0.0)) {
      throw std::invalid_argument("fit_growth: points must be positive");
    }
    const double lx = std::log(N), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("fit_growth: degenerate abscissae");
  }
  GrowthFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.prefactor = std::exp(intercept);
  double rss = 0.0;
  for (const auto& [N, v] : points) {
    const double r = std::log(v) - (intercept + fit.exponent * std::log(N));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace hermsv

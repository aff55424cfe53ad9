#pragma once

#include <vector>

#include "hermsv/basis.hpp"

namespace hermsv {

enum class NormLabel { L2, DxL2, xL2, x2L1 };

/// A norm sampled along the (adaptive) time grid of a run.
struct NormSeries {
  NormLabel label = NormLabel::L2;
  std::vector<double> times;
  std::vector<double> values;
};

/// ||u|| by Parseval: sqrt(sum u_n^2).
double norm_L2(const CoeffVec& u);

/// ||D_x u|| = sqrt(sum lambda_n u_n^2).
double norm_Dx(const CoeffVec& u);

/// ||x u|| = ||op_x(u)|| (x u lives in R_{N+1}, Parseval applies exactly).
double norm_xweighted(const CoeffVec& u);

/// ||x^2 u||_{L1}: trapezoid sum of |x^2 u(x)| on the equidistant grid over
/// [-L, L] with spacing dx.
double norm_x2_L1(const CoeffVec& u, double L, double dx);

/// Trapezoid rule over the series' time grid. L2-type labels integrate
/// value(t)^2 (the squared Bochner norm of the tables); the x2L1 label
/// integrates value(t) itself. Throws std::invalid_argument with fewer than
/// two samples.
double time_integrate(const NormSeries& series);

/// Power-law fit value ~= prefactor * N^exponent, least squares on
/// (log N, log value). residual is the rms of the log residuals.
struct GrowthFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;
};

/// Throws std::invalid_argument with fewer than two points or any
/// nonpositive value.
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& points);

}  // namespace hermsv

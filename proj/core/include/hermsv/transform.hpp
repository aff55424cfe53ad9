#pragma once

#include <functional>
#include <vector>

#include "hermsv/basis.hpp"

namespace hermsv {

/// Gauss-Hermite rule in folded form.
///
/// nodes are the standard abscissae y_j of the M-point rule for the weight
/// e^{-y^2}; folded_weights[j] = w_j e^{y_j^2} stays O(1) for every node, so
/// no factor of the rule ever overflows. The rule targets integrals
///   int g(x) e^{-c x^2} dx,  c = gauss_exponent,
/// through the substitution y = sqrt(c) x: with x_j = y_j / sqrt(c),
///   int h(x) dx ~= (1/sqrt(c)) sum_j folded_weights[j] h(x_j),
/// exact whenever h(x) e^{+c x^2} is a polynomial of degree <= 2M-1. The
/// Gaussian decay is always evaluated inside h itself.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> folded_weights;
  double gauss_exponent = 1.0;
  int node_count = 0;

  double physical_node(int j) const;

  /// (1/sqrt(c)) sum_j folded_weights[j] h(x_j) for the full integrand h.
  double integrate(const std::function<double(double)>& h) const;
};

/// M-point Gauss-Hermite rule: Golub-Welsch tridiagonal eigen-decomposition
/// for the nodes (two Newton polish sweeps on the normalized recurrence),
/// folded weights from W_j = 1/(M psi_{M-1}(y_j)^2). Strictly symmetric.
QuadRule gauss_hermite_rule(int node_count, double gauss_exponent);

/// Rule sized so that analyze() of f(u) H_m^alpha is exact for u in R_{n_max},
/// polynomial flux f of the given degree and m <= n_max+1:
/// c = (flux_degree+1) alpha^2 / 2, M = ceil(((flux_degree+1) n_max + 2)/2) + 2.
/// Throws std::invalid_argument for flux_degree < 1.
QuadRule make_quadrature(const BasisSpec& spec, int flux_degree);

/// Fourier-Hermite coefficients u_hat_n = int f H_n^alpha dx for n <= n_max,
/// computed as (1/sqrt(c)) sum_j folded_weights[j] f(x_j) H_n^alpha(x_j).
/// Throws std::runtime_error naming the node when f is non-finite there.
CoeffVec analyze(const std::function<double(double)>& f, const BasisSpec& spec,
                 const QuadRule& rule);

/// Orthogonal projection P_N: truncation to modes 0..N, zero-extension when
/// N exceeds the input length.
CoeffVec project(const CoeffVec& coeffs, int N);

/// d/dx in coefficient space (one mode longer):
/// (dx u)_m = -(sqrt(lambda_m)/2) u_{m-1} + (sqrt(lambda_{m+1})/2) u_{m+1}.
CoeffVec op_dx(const CoeffVec& coeffs);

/// D_x = d/dx + alpha^2 x, the lowering map (one mode shorter):
/// (Dx u)_m = sqrt(lambda_{m+1}) u_{m+1}.
CoeffVec op_Dx(const CoeffVec& coeffs);

/// Multiplication by x (one mode longer):
/// (x u)_m = (sqrt(lambda_m)/(2 alpha^2)) u_{m-1}
///         + (sqrt(lambda_{m+1})/(2 alpha^2)) u_{m+1}.
CoeffVec op_x(const CoeffVec& coeffs);

/// Sturm-Liouville operator, diagonal: (L_alpha u)_n = lambda_n u_n.
CoeffVec op_Lalpha(const CoeffVec& coeffs);

/// The projection/derivative commutator defect
///   P_N dx(phi) - dx(P_N phi)
///   = (sqrt(lambda_{N+1})/2) [phi_N H_{N+1}^alpha + phi_{N+1} H_N^alpha]
/// for phi with modes through N+1; returned in R_{N+1}.
/// Throws std::invalid_argument when coeffs has fewer than N+2 modes.
CoeffVec commutator_defect(const CoeffVec& coeffs, int N);

}  // namespace hermsv

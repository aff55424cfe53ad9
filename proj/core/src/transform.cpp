#include "hermsv/transform.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace hermsv {

namespace {

constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}

// psi_{M-1}(y) and psi_M(y): the normalized Hermite functions at alpha = 1.
// Forward recurrence; stable up to and past the turning point since psi_n
// grows with n below it.
void psi_top_pair(int M, double y, double* psi_m1, double* psi_m) {
  double pm1 = kPiQuarterInv * std::exp(-0.5 * y * y);
  if (M == 0) {
    *psi_m1 = 0.0;
    *psi_m = pm1;
    return;
  }
  double p = std::sqrt(2.0) * y * pm1;
  for (int n = 1; n < M; ++n) {
    const double next = y * std::sqrt(2.0 / (n + 1)) * p -
                        std::sqrt(static_cast<double>(n) / (n + 1)) * pm1;
    pm1 = p;
    p = next;
  }
  *psi_m1 = pm1;
  *psi_m = p;
}

}  // namespace

double QuadRule::physical_node(int j) const {
  return nodes[static_cast<size_t>(j)] / std::sqrt(gauss_exponent);
}

double QuadRule::integrate(const std::function<double(double)>& h) const {
  const double scale = 1.0 / std::sqrt(gauss_exponent);
  double sum = 0.0;
  for (int j = 0; j < node_count; ++j) {
    sum += folded_weights[static_cast<size_t>(j)] * h(nodes[static_cast<size_t>(j)] * scale);
  }
  return sum * scale;
}

QuadRule gauss_hermite_rule(int node_count, double gauss_exponent) {
  if (node_count < 1) {
    throw std::invalid_argument("gauss_hermite_rule: node_count must be >= 1");
  }
  if (!(gauss_exponent > 0.0)) {
    throw std::invalid_argument("gauss_hermite_rule: gauss_exponent must be > 0");
  }
  const int M = node_count;

  // Jacobi matrix of the orthonormal Hermite recurrence: zero diagonal,
  // off-diagonal b_k = sqrt(k/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(M);
  Eigen::VectorXd sub(M > 1 ? M - 1 : 1);
  for (int k = 1; k < M; ++k) sub[k - 1] = std::sqrt(0.5 * k);

  std::vector<double> y(static_cast<size_t>(M), 0.0);
  if (M > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(M - 1), Eigen::EigenvaluesOnly);
    for (int j = 0; j < M; ++j) y[static_cast<size_t>(j)] = es.eigenvalues()[j];
  }

  // Two Newton sweeps on psi_M; at a root, psi_M'(y) = sqrt(2M) psi_{M-1}(y).
  const double sqrt2M = std::sqrt(2.0 * M);
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (int j = 0; j < M; ++j) {
      double z = y[static_cast<size_t>(j)];
      double pm1, pm;
      psi_top_pair(M, z, &pm1, &pm);
      const double deriv = sqrt2M * pm1 - z * pm;
      if (deriv != 0.0) z -= pm / deriv;
      y[static_cast<size_t>(j)] = z;
    }
  }

  // Enforce exact symmetry (middle node of an odd rule exactly 0).
  for (int j = 0; j < M / 2; ++j) {
    const double s = 0.5 * (y[static_cast<size_t>(j)] - y[static_cast<size_t>(M - 1 - j)]);
    y[static_cast<size_t>(j)] = s;
    y[static_cast<size_t>(M - 1 - j)] = -s;
  }
  if (M % 2 == 1) y[static_cast<size_t>(M / 2)] = 0.0;

  // Folded weights W_j = w_j e^{y_j^2} = 1 / (M psi_{M-1}(y_j)^2).
  std::vector<double> w(static_cast<size_t>(M));
  for (int j = 0; j <= (M - 1) / 2; ++j) {
    double pm1, pm;
    psi_top_pair(M, y[static_cast<size_t>(j)], &pm1, &pm);
    const double wj = 1.0 / (M * pm1 * pm1);
    w[static_cast<size_t>(j)] = wj;
    w[static_cast<size_t>(M - 1 - j)] = wj;
  }

  QuadRule rule;
  rule.nodes = std::move(y);
  rule.folded_weights = std::move(w);
  rule.gauss_exponent = gauss_exponent;
  rule.node_count = M;
  return rule;
}

QuadRule make_quadrature(const BasisSpec& spec, int flux_degree) {
  spec.validate();
  if (flux_degree < 1) {
    throw std::invalid_argument("make_quadrature: flux_degree must be >= 1, got " +
                                std::to_string(flux_degree));
  }
  const double c = (flux_degree + 1) * spec.alpha * spec.alpha / 2.0;
  const long deg = static_cast<long>(flux_degree + 1) * spec.n_max + 2;
  const int M = static_cast<int>((deg + 1) / 2) + 2;  // ceil(deg/2) + 2
  return gauss_hermite_rule(M, c);
}

CoeffVec analyze(const std::function<double(double)>& f, const BasisSpec& spec,
                 const QuadRule& rule) {
  spec.validate();
  CoeffVec out = CoeffVec::zero(spec);
  const double scale = 1.0 / std::sqrt(rule.gauss_exponent);
  for (int j = 0; j < rule.node_count; ++j) {
    const double x = rule.nodes[static_cast<size_t>(j)] * scale;
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      throw std::runtime_error("analyze: non-finite sample at node " +
                               std::to_string(j) + " (x = " + std::to_string(x) + ")");
    }
    const double w = rule.folded_weights[static_cast<size_t>(j)] * scale * fx;
    const std::vector<double> h = eval_basis(spec, x);
    for (size_t n = 0; n < h.size(); ++n) out.values[n] += w * h[n];
  }
  return out;
}

CoeffVec project(const CoeffVec& coeffs, int N) {
  if (N < 0) throw std::invalid_argument("project: N must be >= 0");
  CoeffVec out = CoeffVec::zero(BasisSpec{coeffs.spec.alpha, N});
  const int keep = std::min(N, coeffs.spec.n_max);
  for (int n = 0; n <= keep; ++n) out.values[static_cast<size_t>(n)] = coeffs[n];
  return out;
}

CoeffVec op_dx(const CoeffVec& coeffs) {
  const BasisSpec& s = coeffs.spec;
  CoeffVec out = CoeffVec::zero(BasisSpec{s.alpha, s.n_max + 1});
  for (int m = 0; m <= s.n_max + 1; ++m) {
    double v = 0.0;
    if (m - 1 >= 0 && m - 1 <= s.n_max)
      v -= 0.5 * std::sqrt(lambda(s, m)) * coeffs[m - 1];
    if (m + 1 <= s.n_max)
      v += 0.5 * std::sqrt(lambda(s, m + 1)) * coeffs[m + 1];
    out.values[static_cast<size_t>(m)] = v;
  }
  return out;
}

CoeffVec op_Dx(const CoeffVec& coeffs) {
  const BasisSpec& s = coeffs.spec;
  const int out_n = std::max(s.n_max - 1, 0);
  CoeffVec out = CoeffVec::zero(BasisSpec{s.alpha, out_n});
  for (int m = 0; m <= out_n; ++m) {
    if (m + 1 <= s.n_max)
      out.values[static_cast<size_t>(m)] = std::sqrt(lambda(s, m + 1)) * coeffs[m + 1];
  }
  return out;
}

CoeffVec op_x(const CoeffVec& coeffs) {
  const BasisSpec& s = coeffs.spec;
  const double inv2a2 = 0.5 / (s.alpha * s.alpha);
  CoeffVec out = CoeffVec::zero(BasisSpec{s.alpha, s.n_max + 1});
  for (int m = 0; m <= s.n_max + 1; ++m) {
    double v = 0.0;
    if (m - 1 >= 0 && m - 1 <= s.n_max)
      v += std::sqrt(lambda(s, m)) * inv2a2 * coeffs[m - 1];
    if (m + 1 <= s.n_max)
      v += std::sqrt(lambda(s, m + 1)) * inv2a2 * coeffs[m + 1];
    out.values[static_cast<size_t>(m)] = v;
  }
  return out;
}

CoeffVec op_Lalpha(const CoeffVec& coeffs) {
  CoeffVec out = coeffs;
  for (int n = 0; n <= coeffs.spec.n_max; ++n)
    out.values[static_cast<size_t>(n)] *= lambda(coeffs.spec, n);
  return out;
}

CoeffVec commutator_defect(const CoeffVec& coeffs, int N) {
  if (N < 0) throw std::invalid_argument("commutator_defect: N must be >= 0");
  if (coeffs.spec.n_max < N + 1) {
    throw std::invalid_argument(
        "commutator_defect: input must carry modes through N+1 = " +
        std::to_string(N + 1) + ", has n_max = " + std::to_string(coeffs.spec.n_max));
  }
  CoeffVec out = CoeffVec::zero(BasisSpec{coeffs.spec.alpha, N + 1});
  const double half_sqrt = 0.5 * std::sqrt(lambda(coeffs.spec, N + 1));
  out.values[static_cast<size_t>(N)] = half_sqrt * coeffs[N + 1];
  out.values[static_cast<size_t>(N + 1)] = half_sqrt * coeffs[N];
  return out;
}

}  // namespace hermsv

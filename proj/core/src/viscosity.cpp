#include "hermsv/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hermsv/transform.hpp"

namespace hermsv {

double ViscositySpec::eps(int N) const {
  return eps_coeff * std::pow(static_cast<double>(N), eps_exp);
}

int ViscositySpec::m(int N) const {
  const int raw = static_cast<int>(
      std::floor(m_coeff * std::pow(static_cast<double>(N), m_exp)));
  return std::clamp(raw, 1, N - 1);
}

void ViscositySpec::validate(int N) const {
  if (kind == ViscosityKind::None) return;
  if (!(eps_coeff > 0.0)) {
    throw std::invalid_argument("ViscositySpec: eps_coeff must be > 0");
  }
  if (!(eps(N) > 0.0) || !std::isfinite(eps(N))) {
    throw std::invalid_argument("ViscositySpec: eps_N not positive at N = " +
                                std::to_string(N));
  }
  if (kind == ViscosityKind::HighModeQ) {
    if (!(m_coeff > 0.0)) {
      throw std::invalid_argument("ViscositySpec: m_coeff must be > 0");
    }
    if (N < 2) {
      throw std::invalid_argument(
          "ViscositySpec: high-mode scheme needs N >= 2 (m_N < N), got N = " +
          std::to_string(N));
    }
  }
}

MultiplierSet make_multipliers(int N, int m_N, MultiplierFamily family) {
  (void)family;  // single family
  if (m_N < 1 || m_N >= N) {
    throw std::invalid_argument("make_multipliers: need 1 <= m_N < N, got m_N = " +
                                std::to_string(m_N) + ", N = " + std::to_string(N));
  }
  MultiplierSet out;
  out.q.assign(static_cast<size_t>(N) + 1, 0.0);
  const double front = static_cast<double>(N) / (N - m_N);
  for (int k = m_N + 1; k <= N; ++k) {
    out.q[static_cast<size_t>(k)] =
        front * (1.0 - static_cast<double>(m_N) / k);
  }
  out.q[static_cast<size_t>(N)] = 1.0;  // algebraic value at k = N
  return out;
}

CoeffVec apply_Q(const CoeffVec& coeffs, const MultiplierSet& mult) {
  if (mult.size() != coeffs.size()) {
    throw std::invalid_argument("apply_Q: multiplier length " +
                                std::to_string(mult.size()) +
                                " does not match coefficient length " +
                                std::to_string(coeffs.size()));
  }
  CoeffVec out = coeffs;
  for (size_t k = 0; k < out.values.size(); ++k) out.values[k] *= mult.q[k];
  return out;
}

CoeffVec scheme1_viscosity(const CoeffVec& coeffs, const MultiplierSet& mult,
                           double eps) {
  // dx(D_x(Q u)) already lands in R_N, so the Galerkin truncation is exact.
  CoeffVec out = op_dx(op_Dx(apply_Q(coeffs, mult)));
  for (double& v : out.values) v *= eps;
  return project(out, coeffs.spec.n_max);
}

CoeffVec scheme2_viscosity(const CoeffVec& coeffs, double eps) {
  CoeffVec out = coeffs;
  for (int n = 0; n <= coeffs.spec.n_max; ++n)
    out.values[static_cast<size_t>(n)] *= -eps * lambda(coeffs.spec, n);
  return out;
}

}  // namespace hermsv

#pragma once

#include <vector>

#include "hermsv/basis.hpp"

namespace hermsv {

enum class ViscosityKind { None, HighModeQ, SturmLiouville };

enum class MultiplierFamily { PaperFraction };

/// Spectral-viscosity parameters. eps_N = eps_coeff * N^eps_exp for both
/// schemes; m_N = floor(m_coeff * N^m_exp) clamped to [1, N-1] for the
/// high-mode scheme.
struct ViscositySpec {
  ViscosityKind kind = ViscosityKind::SturmLiouville;
  double eps_coeff = 0.05;
  double eps_exp = -0.33;
  double m_coeff = 5.0;
  double m_exp = 0.16;
  MultiplierFamily family = MultiplierFamily::PaperFraction;

  double eps(int N) const;
  int m(int N) const;

  /// Throws std::invalid_argument when the laws cannot produce a valid
  /// (eps_N, m_N) pair at truncation N.
  void validate(int N) const;
};

/// High-mode multipliers q_hat_0 .. q_hat_N. Invariants: q_hat_k = 0 for
/// k <= m_N and 1 - m_N/k <= q_hat_k <= 1 above.
struct MultiplierSet {
  std::vector<double> q;

  int size() const { return static_cast<int>(q.size()); }
};

/// The PaperFraction family: q_hat_k = N/(N-m_N) * (1 - m_N/k) for k > m_N,
/// zero otherwise (so q_hat_N = 1 exactly).
/// Throws std::invalid_argument unless 1 <= m_N < N.
MultiplierSet make_multipliers(int N, int m_N, MultiplierFamily family);

/// (Q u)_k = q_hat_k u_k. Throws std::invalid_argument on length mismatch.
CoeffVec apply_Q(const CoeffVec& coeffs, const MultiplierSet& mult);

/// Scheme-I viscosity term eps * dx(D_x(Q u)), Galerkin-truncated to R_N
/// (the composition already lands in R_N). This is the term as it appears
/// added to du/dt.
CoeffVec scheme1_viscosity(const CoeffVec& coeffs, const MultiplierSet& mult,
                           double eps);

/// Scheme-II viscosity contribution to dv/dt: -(eps L_alpha v)_k
/// = -eps lambda_k v_k.
CoeffVec scheme2_viscosity(const CoeffVec& coeffs, double eps);

}  // namespace hermsv

#pragma once

#include <vector>

namespace hermsv {

/// Generalized Hermite basis H_n^alpha(x): the Hermite function of degree n
/// dilated by the scaling factor alpha and normalized to unit L2 norm on the
/// real line. The family {H_n^alpha} is orthonormal and spans R_N when
/// truncated at n_max = N.
struct BasisSpec {
  double alpha = 1.0;  // scaling factor, > 0
  int n_max = 0;       // highest retained mode N, >= 0

  int size() const { return n_max + 1; }

  /// Throws std::invalid_argument when alpha <= 0 (or non-finite) or n_max < 0.
  void validate() const;

  friend bool operator==(const BasisSpec& a, const BasisSpec& b) {
    return a.alpha == b.alpha && a.n_max == b.n_max;
  }
};

/// Sturm-Liouville eigenvalue of H_n^alpha: lambda_n = 2 alpha^2 n.
/// Throws std::invalid_argument for n < 0.
double lambda(const BasisSpec& spec, int n);

/// Values H_0^alpha(x) .. H_{n_max}^alpha(x).
///
/// Uses the normalized-function recurrence
///   psi_0(y) = pi^{-1/4} e^{-y^2/2},  psi_1(y) = sqrt(2) y psi_0(y),
///   psi_{n+1}(y) = y sqrt(2/(n+1)) psi_n(y) - sqrt(n/(n+1)) psi_{n-1}(y),
/// with H_n^alpha(x) = sqrt(alpha) psi_n(alpha x), so the factor 2^n n! is
/// never formed. Deep in the decaying tail the values underflow to 0, which
/// is the intended behavior (no extrapolation past the turning point).
std::vector<double> eval_basis(const BasisSpec& spec, double x);

/// A finite Fourier-Hermite coefficient sequence u_hat_0 .. u_hat_{n_max}
/// against a basis. Doubles as the solver unknown vector.
struct CoeffVec {
  BasisSpec spec;
  std::vector<double> values;

  static CoeffVec zero(const BasisSpec& spec);
  /// Unit coefficient e_k.
  static CoeffVec unit(const BasisSpec& spec, int k);

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int n) const { return values[static_cast<size_t>(n)]; }
  double& operator[](int n) { return values[static_cast<size_t>(n)]; }

  /// Throws std::invalid_argument unless values.size() == n_max+1 and all
  /// entries are finite.
  void validate() const;
};

/// Synthesis u(x) = sum_n u_hat_n H_n^alpha(x).
double eval_series(const CoeffVec& coeffs, double x);

/// l2 inner product in coefficient space, summed over the common mode range.
/// Exact Parseval pairing when both vectors share the same alpha.
double inner(const CoeffVec& a, const CoeffVec& b);

}  // namespace hermsv

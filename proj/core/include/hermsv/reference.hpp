#pragma once

#include <vector>

namespace hermsv {

/// First crossing time of characteristics for u_t + (u^2/2)_x = 0 with
/// u_0 = e^{-x^2}: T* = sqrt(e/2).
double shock_time();

struct CharacteristicSolution {
  double newton_tol = 1e-13;
  int max_iter = 80;
};

/// Pre-shock solution by characteristics: solves eta + t e^{-eta^2} = x by
/// safeguarded Newton on the bracket [x-t, x] and returns e^{-eta^2}.
/// Throws std::domain_error for t outside [0, T*) and std::runtime_error
/// (with the residual) on non-convergence.
double exact_pre_shock(double x, double t,
                       const CharacteristicSolution& sol = {});

/// First-order Godunov oracle on [-L, L]; valid past the shock.
struct FVOracle {
  double half_width = 10.0;
  int cell_count = 20001;  // odd, so the grid is symmetric
  double cfl = 0.45;       // <= 0.9

  void validate() const;
};

struct FVProfile {
  double t = 0.0;
  double dx = 0.0;
  std::vector<double> x;  // cell centers
  std::vector<double> u;

  /// Linear interpolation between cell centers; 0 outside the domain.
  double interpolate(double xq) const;
  double total_variation() const;
  double mass() const;  // sum u_i dx
};

/// March the Godunov scheme (exact Burgers Riemann fluxes) from u_0 = e^{-x^2}
/// to time t.
FVProfile fv_reference(double t, const FVOracle& oracle);

}  // namespace hermsv

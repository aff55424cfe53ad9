#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hermsv/basis.hpp"
#include "hermsv/diagnostics.hpp"
#include "hermsv/transform.hpp"
#include "hermsv/viscosity.hpp"

namespace hermsv {

/// Polynomial flux f(u) = sum_j coeffs[j] u^j.
struct Flux {
  std::vector<double> coeffs;

  static Flux burgers() { return Flux{{0.0, 0.0, 0.5}}; }
  static Flux zero() { return Flux{{0.0, 0.0}}; }

  int degree() const;
  double operator()(double u) const;
};

/// Everything a single semi-discrete run needs.
struct SchemeConfig {
  BasisSpec basis;
  ViscositySpec viscosity;
  Flux flux = Flux::burgers();
  /// Initial profile u_0; empty means the Gaussian e^{-x^2}.
  std::function<double(double)> initial;
  double t_final = 1.5;
  double rel_tol = 1e-3;
  double abs_tol = 1e-6;
  /// Record the ||x^2 u||_L1 series (needs a physical-space grid per step).
  bool record_x2l1 = true;
  double grid_half_width = 10.0;
  double grid_dx = 0.01;

  void validate() const;
};

struct StepEntry {
  double t = 0.0;
  double step = 0.0;  // accepted step size that produced this state
};

struct SolverState {
  double t = 0.0;
  CoeffVec u;
  std::vector<StepEntry> step_history;
};

/// Time series produced by integrate(): states and norms at every accepted
/// step (the t=0 entry included), plus completion status.
struct RunRecord {
  std::vector<double> times;
  std::vector<double> step_sizes;
  std::vector<std::vector<double>> states;
  NormSeries l2, dx_l2, x_l2, x2_l1;  // x2_l1 empty unless recorded
  CoeffVec final_state;
  long rhs_evaluations = 0;
  long accepted_steps = 0;
  long rejected_steps = 0;
  bool completed = false;
  std::string abort_reason;
};

/// The Galerkin right-hand side assembled once per run: quadrature rule,
/// basis values at the nodes, viscosity operator.
class GalerkinSystem {
 public:
  explicit GalerkinSystem(const SchemeConfig& cfg);

  /// du/dt for the coefficient vector u (modes 0..N):
  /// synthesize -> flux -> analyze into R_{N+1} -> dx -> truncate to R_N ->
  /// negate -> add viscosity. Throws std::runtime_error naming the stage on
  /// non-finite intermediates.
  void rhs(const std::vector<double>& u, std::vector<double>& dudt) const;

  CoeffVec rhs(const SolverState& state) const;

  /// P_N u_0 computed with the run's quadrature rule.
  CoeffVec initial_state() const;

  const SchemeConfig& config() const { return cfg_; }
  const QuadRule& rule() const { return rule_; }

 private:
  SchemeConfig cfg_;
  QuadRule rule_;
  std::vector<double> node_x_;       // physical abscissae
  std::vector<double> node_w_;       // folded_weights / sqrt(c)
  std::vector<double> basis_at_nodes_;  // row j: H_0..H_{N+1} at node j
  int n_basis_cols_ = 0;
  MultiplierSet mult_;               // scheme I only
  double eps_ = 0.0;
};

/// Free-function form of the spec operation; builds the system on the fly.
CoeffVec rhs(const SolverState& state, const SchemeConfig& cfg);

/// Advance from u(0) = P_N u_0 to t_final with the Dormand-Prince 4(5)
/// embedded pair (PI step-size control, FSAL). Norms are recorded at
/// accepted steps only. Step-size underflow (< 1e-12 t_final) or persistent
/// non-finite right-hand sides abort the run, keeping the last valid state
/// and a diagnostic in abort_reason.
RunRecord integrate(const SchemeConfig& cfg);

}  // namespace hermsv

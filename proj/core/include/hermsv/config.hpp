#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hermsv/solver.hpp"

namespace hermsv {

enum class SchemeKind { None, HighModeQ, SturmLiouville };

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& s);

/// One experiment's worth of knobs. Defaults reproduce the scheme-II N=40
/// Burgers run (alpha = sqrt(2), eps_N = 0.05 N^{-0.33}, t = 1.5).
struct RunConfig {
  SchemeKind scheme = SchemeKind::SturmLiouville;
  int n_modes = 40;  // N
  double alpha = 1.4142135623730951;
  /// Unset means the per-scheme default: 0.5 for high_mode_q, 0.05 for
  /// sturm_liouville.
  std::optional<double> eps_coeff;
  double eps_exp = -0.33;
  double m_coeff = 5.0;
  double m_exp = 0.16;
  double t_final = 1.5;
  double rel_tol = 1e-3;
  double abs_tol = 1e-6;
  std::vector<int> sweep_Ns;
  std::string output_dir = ".";
  double grid_L = 10.0;
  double grid_dx = 0.01;
  int oracle_cells = 20001;

  double eps_coeff_value() const;
  ViscositySpec viscosity() const;
  /// SchemeConfig for truncation N (Burgers flux, Gaussian initial data).
  SchemeConfig scheme_config(int N, bool record_x2l1) const;

  /// Throws std::invalid_argument on the first invalid field.
  void validate() const;
};

/// Serialize to a JSON object (stable key order); the exact content embedded
/// in summary.json.
std::string config_to_json(const RunConfig& cfg);

/// Inverse of config_to_json; also accepts a whole summary.json (uses its
/// "config" object). Unknown keys are rejected.
RunConfig config_from_json(const std::string& text);

}  // namespace hermsv

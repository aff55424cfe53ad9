#include "hermsv/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hermsv {

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::None:
      return "none";
    case SchemeKind::HighModeQ:
      return "high_mode_q";
    case SchemeKind::SturmLiouville:
      return "sturm_liouville";
  }
  return "none";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
  if (s == "none") return SchemeKind::None;
  if (s == "high_mode_q") return SchemeKind::HighModeQ;
  if (s == "sturm_liouville") return SchemeKind::SturmLiouville;
  throw std::invalid_argument(
      "unknown scheme '" + s +
      "' (expected none, high_mode_q or sturm_liouville)");
}

double RunConfig::eps_coeff_value() const {
  if (eps_coeff) return *eps_coeff;
  return scheme == SchemeKind::HighModeQ ? 0.5 : 0.05;
}

ViscositySpec RunConfig::viscosity() const {
  ViscositySpec v;
  switch (scheme) {
    case SchemeKind::None:
      v.kind = ViscosityKind::None;
      break;
    case SchemeKind::HighModeQ:
      v.kind = ViscosityKind::HighModeQ;
      break;
    case SchemeKind::SturmLiouville:
      v.kind = ViscosityKind::SturmLiouville;
      break;
  }
  v.eps_coeff = eps_coeff_value();
  v.eps_exp = eps_exp;
  v.m_coeff = m_coeff;
  v.m_exp = m_exp;
  return v;
}

SchemeConfig RunConfig::scheme_config(int N, bool record_x2l1) const {
  SchemeConfig sc;
  sc.basis = BasisSpec{alpha, N};
  sc.viscosity = viscosity();
  sc.flux = Flux::burgers();
  sc.t_final = t_final;
  sc.rel_tol = rel_tol;
  sc.abs_tol = abs_tol;
  sc.record_x2l1 = record_x2l1;
  sc.grid_half_width = grid_L;
  sc.grid_dx = grid_dx;
  return sc;
}

void RunConfig::validate() const {
  if (n_modes < 0) throw std::invalid_argument("config: N must be >= 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("config: alpha must be positive");
  }
  if (!(eps_coeff_value() > 0.0)) {
    throw std::invalid_argument("config: eps_coeff must be positive");
  }
  if (!(m_coeff > 0.0)) throw std::invalid_argument("config: m_coeff must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("config: t_final must be >= 0");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("config: rel_tol must lie in (0, 1)");
  }
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) {
    throw std::invalid_argument("config: abs_tol must lie in (0, 1)");
  }
  for (int N : sweep_Ns) {
    if (N < 0) throw std::invalid_argument("config: sweep N values must be >= 0");
  }
  if (!(grid_L > 0.0) || !(grid_dx > 0.0)) {
    throw std::invalid_argument("config: grid_L and grid_dx must be positive");
  }
  if (oracle_cells < 3 || oracle_cells % 2 == 0) {
    throw std::invalid_argument("config: oracle_cells must be odd and >= 3");
  }
  if (output_dir.empty()) throw std::invalid_argument("config: output_dir is empty");
}

namespace {
using ordered_json = nlohmann::ordered_json;
}

std::string config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["scheme"] = to_string(cfg.scheme);
  j["N"] = cfg.n_modes;
  j["alpha"] = cfg.alpha;
  j["eps_coeff"] = cfg.eps_coeff_value();
  j["eps_exp"] = cfg.eps_exp;
  j["m_coeff"] = cfg.m_coeff;
  j["m_exp"] = cfg.m_exp;
  j["t_final"] = cfg.t_final;
  j["rel_tol"] = cfg.rel_tol;
  j["abs_tol"] = cfg.abs_tol;
  j["sweep_Ns"] = cfg.sweep_Ns;
  j["output_dir"] = cfg.output_dir;
  j["grid_L"] = cfg.grid_L;
  j["grid_dx"] = cfg.grid_dx;
  j["oracle_cells"] = cfg.oracle_cells;
  return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (j.contains("config")) j = j["config"];

  static const std::set<std::string> known = {
      "scheme",  "N",        "alpha",      "eps_coeff", "eps_exp",
      "m_coeff", "m_exp",    "t_final",    "rel_tol",   "abs_tol",
      "sweep_Ns", "output_dir", "grid_L",  "grid_dx",   "oracle_cells"};
  for (const auto& item : j.items()) {
    if (known.find(item.key()) == known.end()) {
      throw std::invalid_argument("config: unknown key '" + item.key() + "'");
    }
  }

  RunConfig cfg;
  if (j.contains("scheme")) cfg.scheme = scheme_kind_from_string(j["scheme"]);
  if (j.contains("N")) cfg.n_modes = j["N"];
  if (j.contains("alpha")) cfg.alpha = j["alpha"];
  if (j.contains("eps_coeff")) cfg.eps_coeff = j["eps_coeff"].get<double>();
  if (j.contains("eps_exp")) cfg.eps_exp = j["eps_exp"];
  if (j.contains("m_coeff")) cfg.m_coeff = j["m_coeff"];
  if (j.contains("m_exp")) cfg.m_exp = j["m_exp"];
  if (j.contains("t_final")) cfg.t_final = j["t_final"];
  if (j.contains("rel_tol")) cfg.rel_tol = j["rel_tol"];
  if (j.contains("abs_tol")) cfg.abs_tol = j["abs_tol"];
  if (j.contains("sweep_Ns")) cfg.sweep_Ns = j["sweep_Ns"].get<std::vector<int>>();
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"];
  if (j.contains("grid_L")) cfg.grid_L = j["grid_L"];
  if (j.contains("grid_dx")) cfg.grid_dx = j["grid_dx"];
  if (j.contains("oracle_cells")) cfg.oracle_cells = j["oracle_cells"];
  cfg.validate();
  return cfg;
}

}  // namespace hermsv

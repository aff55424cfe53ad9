#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "hermsv/config.hpp"
#include "hermsv/runner.hpp"

namespace {

struct CliState {
  hermsv::RunConfig cfg;
  std::string scheme = "sturm_liouville";
  double eps_coeff = 0.0;
  CLI::Option* eps_opt = nullptr;
  int quad_nodes = 0;
};

void add_common_options(CLI::App& app, CliState& st) {
  app.add_option("--scheme", st.scheme,
                 "Viscosity scheme: none, high_mode_q or sturm_liouville")
      ->capture_default_str();
  app.add_option("-N,--N", st.cfg.n_modes, "Truncation (highest retained mode)")
      ->capture_default_str();
  app.add_option("--alpha", st.cfg.alpha, "Hermite scaling factor")
      ->capture_default_str();
  st.eps_opt = app.add_option(
      "--eps_coeff", st.eps_coeff,
      "Coefficient of eps_N = eps_coeff * N^eps_exp (default 0.5 for "
      "high_mode_q, 0.05 for sturm_liouville)");
  app.add_option("--eps_exp", st.cfg.eps_exp, "Exponent of eps_N")
      ->capture_default_str();
  app.add_option("--m_coeff", st.cfg.m_coeff, "Coefficient of m_N = floor(m_coeff * N^m_exp)")
      ->capture_default_str();
  app.add_option("--m_exp", st.cfg.m_exp, "Exponent of m_N")->capture_default_str();
  app.add_option("--t_final", st.cfg.t_final, "Final time")->capture_default_str();
  app.add_option("--rel_tol", st.cfg.rel_tol, "Integrator relative tolerance")
      ->capture_default_str();
  app.add_option("--abs_tol", st.cfg.abs_tol, "Integrator absolute tolerance")
      ->capture_default_str();
  app.add_option("--sweep_Ns", st.cfg.sweep_Ns, "Truncations for the sweep subcommand");
  app.add_option("--output_dir", st.cfg.output_dir, "Directory for output files")
      ->capture_default_str();
  app.add_option("--grid_L", st.cfg.grid_L, "Half-width of the physical output grid")
      ->capture_default_str();
  app.add_option("--grid_dx", st.cfg.grid_dx, "Spacing of the physical output grid")
      ->capture_default_str();
  app.add_option("--oracle_cells", st.cfg.oracle_cells,
                 "Finite-volume reference cell count (odd)")
      ->capture_default_str();
  app.set_config("--config", "", "TOML config file (flags override its values)");
}

void finalize_config(CliState& st) {
  st.cfg.scheme = hermsv::scheme_kind_from_string(st.scheme);
  if (st.eps_opt->count() > 0) st.cfg.eps_coeff = st.eps_coeff;
  st.cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite spectral-viscosity schemes for scalar conservation laws"};
  app.require_subcommand(1);

  CliState st;
  add_common_options(app, st);

  CLI::App* run = app.add_subcommand(
      "run", "Single run; writes profile.csv, norms.csv, summary.json");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "One run per N in --sweep_Ns; writes table.csv, growth.json");
  CLI::App* compare = app.add_subcommand(
      "compare", "Error report against the finite-volume reference; writes errors.json");
  CLI::App* basis_check = app.add_subcommand(
      "basis-check", "Orthonormality / operator-identity / projection-decay checks");
  basis_check->add_option("--quad-nodes", st.quad_nodes,
                          "Override the orthonormality quadrature size (0 = automatic)");
  for (CLI::App* sub : {run, sweep, compare, basis_check}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    finalize_config(st);
    if (run->parsed()) {
      const hermsv::RunArtifacts art = hermsv::cmd_run(st.cfg);
      std::cout << "N = " << st.cfg.n_modes
                << "  steps = " << art.record.accepted_steps
                << "  |u|^2_int = " << art.norms.l2_sq
                << "  |Dxu|^2_int = " << art.norms.dx_l2_sq
                << "  |xu|^2_int = " << art.norms.x_l2_sq
                << "  |x2u|_L1_int = " << art.norms.x2_l1 << "\n";
      if (!art.record.completed) {
        std::cerr << "solver aborted: " << art.record.abort_reason << "\n";
        return 2;
      }
    } else if (sweep->parsed()) {
      const hermsv::SweepResult result = hermsv::cmd_sweep(st.cfg);
      size_t failed = 0;
      for (const auto& row : result.rows) {
        if (row.failed) {
          ++failed;
          std::cerr << "N = " << row.N << " failed: " << row.failure << "\n";
        } else {
          std::cout << "N = " << row.N << "  |Dxu|^2 = " << row.norms.dx_l2_sq
                    << "  |xu|^2 = " << row.norms.x_l2_sq
                    << "  |u|^2 = " << row.norms.l2_sq
                    << "  |x2u|_L1 = " << row.norms.x2_l1 << "\n";
        }
      }
      for (const auto& [name, fit] : result.fits) {
        std::cout << "fit " << name << ": N^" << fit.exponent << "\n";
      }
      if (failed == result.rows.size()) return 2;
    } else if (compare->parsed()) {
      const hermsv::CompareReport rep = hermsv::cmd_compare(st.cfg);
      std::cout << "L1 error = " << rep.l1_error << "  L2 error = " << rep.l2_error
                << "  front L1 = " << rep.front_l1_error
                << "  oscillation = " << rep.oscillation_indicator << "\n";
    } else if (basis_check->parsed()) {
      const hermsv::BasisCheckReport rep =
          hermsv::cmd_basis_check(st.cfg, std::cout, st.quad_nodes);
      return rep.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "hermsv/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hermsv/diagnostics.hpp"
#include "hermsv/transform.hpp"

namespace hermsv {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<double> make_grid(double L, double dx) {
  const int n_pts = static_cast<int>(std::floor(2.0 * L / dx + 0.5)) + 1;
  std::vector<double> g(static_cast<size_t>(n_pts));
  for (int i = 0; i < n_pts; ++i) g[static_cast<size_t>(i)] = -L + i * dx;
  return g;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out.good()) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

IntegratedNorms integrate_norms(const RunRecord& rec) {
  IntegratedNorms n;
  if (rec.times.size() >= 2) {
    n.l2_sq = time_integrate(rec.l2);
    n.dx_l2_sq = time_integrate(rec.dx_l2);
    n.x_l2_sq = time_integrate(rec.x_l2);
    if (rec.x2_l1.times.size() >= 2) n.x2_l1 = time_integrate(rec.x2_l1);
  }
  return n;
}

double total_variation(const std::vector<double>& v) {
  double tv = 0.0;
  for (size_t i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
  return tv;
}

}  // namespace

RunArtifacts run_single(const RunConfig& cfg, int N, bool record_x2l1) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunArtifacts art;
  art.record = integrate(cfg.scheme_config(N, record_x2l1));
  art.norms = integrate_norms(art.record);
  art.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return art;
}

RunArtifacts cmd_run(const RunConfig& cfg) {
  cfg.validate();
  RunArtifacts art = run_single(cfg, cfg.n_modes, /*record_x2l1=*/true);
  const RunRecord& rec = art.record;

  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);

  // profile.csv: spectral solution at t_final next to the finite-volume
  // reference on the equidistant grid.
  {
    const std::vector<double> grid = make_grid(cfg.grid_L, cfg.grid_dx);
    const FVProfile ref =
        fv_reference(rec.times.back(), FVOracle{cfg.grid_L, cfg.oracle_cells, 0.45});
    std::string csv = "x,u_N,u_ref\n";
    for (double x : grid) {
      csv += format_float(x);
      csv += ',';
      csv += format_float(eval_series(rec.final_state, x));
      csv += ',';
      csv += format_float(ref.interpolate(x));
      csv += '\n';
    }
    write_file(dir / "profile.csv", csv);
  }

  // norms.csv: the recorded series on the adaptive time grid.
  {
    std::string csv = "t,l2,dx_l2,x_l2,x2_l1\n";
    for (size_t i = 0; i < rec.times.size(); ++i) {
      csv += format_float(rec.times[i]);
      csv += ',';
      csv += format_float(rec.l2.values[i]);
      csv += ',';
      csv += format_float(rec.dx_l2.values[i]);
      csv += ',';
      csv += format_float(rec.x_l2.values[i]);
      csv += ',';
      csv += format_float(i < rec.x2_l1.values.size() ? rec.x2_l1.values[i] : 0.0);
      csv += '\n';
    }
    write_file(dir / "norms.csv", csv);
  }

  // summary.json: self-describing record.
  {
    ordered_json j;
    j["config"] = ordered_json::parse(config_to_json(cfg));
    ordered_json r;
    r["completed"] = rec.completed;
    r["abort_reason"] = rec.abort_reason;
    r["accepted_steps"] = rec.accepted_steps;
    r["rejected_steps"] = rec.rejected_steps;
    r["rhs_evaluations"] = rec.rhs_evaluations;
    r["final_time"] = rec.times.back();
    ordered_json norms;
    norms["l2_sq"] = art.norms.l2_sq;
    norms["dx_l2_sq"] = art.norms.dx_l2_sq;
    norms["x_l2_sq"] = art.norms.x_l2_sq;
    norms["x2_l1"] = art.norms.x2_l1;
    r["integrated_norms"] = norms;
    ordered_json fin;
    fin["l2"] = norm_L2(rec.final_state);
    fin["dx_l2"] = norm_Dx(rec.final_state);
    fin["x_l2"] = norm_xweighted(rec.final_state);
    r["final_norms"] = fin;
    r["runtime_seconds"] = art.wall_seconds;
    j["run"] = r;
    write_file(dir / "summary.json", j.dump(2) + "\n");
  }

  return art;
}

SweepResult cmd_sweep(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.sweep_Ns.size() < 2) {
    throw std::invalid_argument("sweep: need at least two N values");
  }
  const bool with_x2l1 = cfg.scheme == SchemeKind::SturmLiouville;

  SweepResult result;
  result.rows.resize(cfg.sweep_Ns.size());

  // Rows are independent runs; execute them concurrently.
  std::vector<std::future<void>> jobs;
  jobs.reserve(cfg.sweep_Ns.size());
  for (size_t i = 0; i < cfg.sweep_Ns.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      SweepRow& row = result.rows[i];
      row.N = cfg.sweep_Ns[i];
      try {
        RunArtifacts art = run_single(cfg, row.N, with_x2l1);
        if (!art.record.completed) {
          row.failed = true;
          row.failure = art.record.abort_reason;
        } else {
          row.norms = art.norms;
        }
      } catch (const std::exception& e) {
        row.failed = true;
        row.failure = e.what();
      }
    }));
  }
  for (auto& job : jobs) job.get();

  // Column set mirrors the scheme's table.
  struct Column {
    std::string name;
    double IntegratedNorms::*field;
  };
  std::vector<Column> columns;
  if (with_x2l1) {
    columns = {{"dx_l2_sq", &IntegratedNorms::dx_l2_sq},
               {"l2_sq", &IntegratedNorms::l2_sq},
               {"x2_l1", &IntegratedNorms::x2_l1}};
  } else {
    columns = {{"dx_l2_sq", &IntegratedNorms::dx_l2_sq},
               {"x_l2_sq", &IntegratedNorms::x_l2_sq},
               {"l2_sq", &IntegratedNorms::l2_sq}};
  }

  for (const Column& col : columns) {
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& row : result.rows) {
      if (!row.failed && row.norms.*col.field > 0.0) {
        pts.emplace_back(static_cast<double>(row.N), row.norms.*col.field);
      }
    }
    if (pts.size() >= 2) {
      result.fits.emplace_back(col.name, fit_growth(pts));
    }
  }

  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);

  {
    std::string csv = "N";
    for (const Column& col : columns) csv += "," + col.name;
    csv += '\n';
    for (const SweepRow& row : result.rows) {
      csv += std::to_string(row.N);
      for (const Column& col : columns) {
        csv += ',';
        csv += row.failed ? "nan" : format_float(row.norms.*col.field);
      }
      csv += '\n';
    }
    write_file(dir / "table.csv", csv);
  }

  {
    ordered_json j;
    j["config"] = ordered_json::parse(config_to_json(cfg));
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : result.rows) {
      ordered_json r;
      r["N"] = row.N;
      r["failed"] = row.failed;
      if (row.failed) r["failure"] = row.failure;
      rows.push_back(r);
    }
    j["rows"] = rows;
    ordered_json fits;
    for (const auto& [name, fit] : result.fits) {
      ordered_json f;
      f["exponent"] = fit.exponent;
      f["prefactor"] = fit.prefactor;
      f["residual"] = fit.residual;
      fits[name] = f;
    }
    j["fits"] = fits;
    write_file(dir / "growth.json", j.dump(2) + "\n");
  }

  return result;
}

CompareReport cmd_compare(const RunConfig& cfg) {
  cfg.validate();
  RunArtifacts art = run_single(cfg, cfg.n_modes, /*record_x2l1=*/false);
  const RunRecord& rec = art.record;

  const std::vector<double> grid = make_grid(cfg.grid_L, cfg.grid_dx);
  const size_t n_pts = grid.size();
  const double dx = cfg.grid_dx;

  const FVProfile ref =
      fv_reference(rec.times.back(), FVOracle{cfg.grid_L, cfg.oracle_cells, 0.45});

  std::vector<double> sol(n_pts), exact(n_pts);
  for (size_t i = 0; i < n_pts; ++i) {
    sol[i] = eval_series(rec.final_state, grid[i]);
    exact[i] = ref.interpolate(grid[i]);
  }

  CompareReport rep;
  for (size_t i = 0; i < n_pts; ++i) {
    const double w = (i == 0 || i + 1 == n_pts) ? 0.5 * dx : dx;
    const double d = sol[i] - exact[i];
    rep.l1_error += w * std::abs(d);
    rep.l2_error += w * d * d;
  }
  rep.l2_error = std::sqrt(rep.l2_error);

  // Front region: centered on the reference profile's steepest descent.
  size_t steepest = 0;
  double biggest_drop = -1.0;
  for (size_t i = 0; i + 1 < n_pts; ++i) {
    const double drop = exact[i] - exact[i + 1];
    if (drop > biggest_drop) {
      biggest_drop = drop;
      steepest = i;
    }
  }
  rep.front_center = grid[steepest] + 0.5 * dx;
  for (size_t i = 0; i < n_pts; ++i) {
    if (std::abs(grid[i] - rep.front_center) <= rep.front_half_width) {
      rep.front_l1_error += dx * std::abs(sol[i] - exact[i]);
    }
  }

  rep.tv_solution = total_variation(sol);
  rep.tv_reference = total_variation(exact);
  rep.oscillation_indicator = rep.tv_solution - rep.tv_reference;

  fs::create_directories(cfg.output_dir);
  ordered_json j;
  j["config"] = ordered_json::parse(config_to_json(cfg));
  ordered_json e;
  e["l1_error"] = rep.l1_error;
  e["l2_error"] = rep.l2_error;
  e["front_l1_error"] = rep.front_l1_error;
  e["front_center"] = rep.front_center;
  e["front_half_width"] = rep.front_half_width;
  e["tv_solution"] = rep.tv_solution;
  e["tv_reference"] = rep.tv_reference;
  e["oscillation_indicator"] = rep.oscillation_indicator;
  j["errors"] = e;
  write_file(fs::path(cfg.output_dir) / "errors.json", j.dump(2) + "\n");

  return rep;
}

bool BasisCheckReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Entry& e) { return e.passed; });
}

namespace {

// Gram matrix <H_m, H_n> by quadrature; returns the max deviation from the
// identity and the offending pair.
BasisCheckReport::Entry orthonormality_check(const BasisSpec& spec,
                                             int quad_nodes_override) {
  QuadRule rule = quad_nodes_override > 0
                      ? gauss_hermite_rule(quad_nodes_override,
                                           spec.alpha * spec.alpha)
                      : make_quadrature(spec, 1);
  const int n = spec.size();
  std::vector<double> gram(static_cast<size_t>(n) * n, 0.0);
  const double scale = 1.0 / std::sqrt(rule.gauss_exponent);
  for (int j = 0; j < rule.node_count; ++j) {
    const double x = rule.nodes[static_cast<size_t>(j)] * scale;
    const double w = rule.folded_weights[static_cast<size_t>(j)] * scale;
    const std::vector<double> h = eval_basis(spec, x);
    for (int m = 0; m < n; ++m) {
      const double wh = w * h[static_cast<size_t>(m)];
      for (int k = m; k < n; ++k) {
        gram[static_cast<size_t>(m) * n + k] += wh * h[static_cast<size_t>(k)];
      }
    }
  }
  BasisCheckReport::Entry e;
  e.name = "orthonormality";
  int wm = 0, wk = 0;
  for (int m = 0; m < n; ++m) {
    for (int k = m; k < n; ++k) {
      const double d =
          std::abs(gram[static_cast<size_t>(m) * n + k] - (m == k ? 1.0 : 0.0));
      if (d > e.defect) {
        e.defect = d;
        wm = m;
        wk = k;
      }
    }
  }
  e.passed = e.defect < 1e-10;
  e.detail = "worst pair (m,n) = (" + std::to_string(wm) + "," + std::to_string(wk) +
             "), defect = " + format_float(e.defect);
  return e;
}

// <D_x H_n, D_x H_m> = lambda_n delta_{nm} through the same quadrature.
BasisCheckReport::Entry dx_orthogonality_check(const BasisSpec& spec) {
  const QuadRule rule = make_quadrature(spec, 1);
  const int n = spec.size();
  std::vector<double> gram(static_cast<size_t>(n) * n, 0.0);
  const double scale = 1.0 / std::sqrt(rule.gauss_exponent);
  for (int j = 0; j < rule.node_count; ++j) {
    const double x = rule.nodes[static_cast<size_t>(j)] * scale;
    const double w = rule.folded_weights[static_cast<size_t>(j)] * scale;
    const std::vector<double> h = eval_basis(spec, x);
    // D_x H_n = sqrt(lambda_n) H_{n-1}
    for (int m = 1; m < n; ++m) {
      const double dm = std::sqrt(lambda(spec, m)) * h[static_cast<size_t>(m) - 1];
      for (int k = m; k < n; ++k) {
        const double dk = std::sqrt(lambda(spec, k)) * h[static_cast<size_t>(k) - 1];
        gram[static_cast<size_t>(m) * n + k] += w * dm * dk;
      }
    }
  }
  BasisCheckReport::Entry e;
  e.name = "dx_orthogonality";
  int wm = 0, wk = 0;
  for (int m = 0; m < n; ++m) {
    for (int k = m; k < n; ++k) {
      const double target = (m == k) ? lambda(spec, m) : 0.0;
      const double d = std::abs(gram[static_cast<size_t>(m) * n + k] - target) /
                       std::max(1.0, lambda(spec, spec.n_max));
      if (d > e.defect) {
        e.defect = d;
        wm = m;
        wk = k;
      }
    }
  }
  e.passed = e.defect < 1e-10;
  e.detail = "worst pair (m,n) = (" + std::to_string(wm) + "," + std::to_string(wk) +
             "), relative defect = " + format_float(e.defect);
  return e;
}

CoeffVec random_coeffs(const BasisSpec& spec, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CoeffVec u = CoeffVec::zero(spec);
  for (double& v : u.values) v = dist(rng);
  return u;
}

BasisCheckReport::Entry operator_identity_check(const BasisSpec& spec) {
  BasisCheckReport::Entry e;
  e.name = "operator_identities";
  const CoeffVec u = random_coeffs(spec, 12345);
  const double scale = norm_L2(u);

  // D_x = d/dx + alpha^2 x.
  const CoeffVec lhs = op_Dx(u);
  const CoeffVec d = op_dx(u);
  const CoeffVec xw = op_x(u);
  const double a2 = spec.alpha * spec.alpha;
  for (int m = 0; m <= spec.n_max + 1; ++m) {
    const double rhs_m = d[m] + a2 * xw[m];
    const double lhs_m = (m <= lhs.spec.n_max) ? lhs[m] : 0.0;
    e.defect = std::max(e.defect, std::abs(lhs_m - rhs_m) / scale);
  }

  // L_alpha is diagonal with eigenvalue lambda_n.
  const CoeffVec lu = op_Lalpha(u);
  for (int m = 0; m <= spec.n_max; ++m) {
    e.defect = std::max(
        e.defect, std::abs(lu[m] - lambda(spec, m) * u[m]) /
                      (scale * std::max(1.0, lambda(spec, spec.n_max))));
  }

  // <L_alpha u, v> = <D_x u, D_x v>.
  const CoeffVec v = random_coeffs(spec, 67890);
  const double lhs_ip = inner(lu, v);
  const double rhs_ip = inner(op_Dx(u), op_Dx(v));
  e.defect = std::max(e.defect, std::abs(lhs_ip - rhs_ip) /
                                    std::max(1.0, std::abs(rhs_ip)));

  e.passed = e.defect < 1e-12;
  e.detail = "max relative defect = " + format_float(e.defect);
  return e;
}

BasisCheckReport::Entry commutator_check(const BasisSpec& spec) {
  BasisCheckReport::Entry e;
  e.name = "commutator_defect";
  const int N = spec.n_max;
  const CoeffVec phi = random_coeffs(BasisSpec{spec.alpha, N + 1}, 24680);
  const CoeffVec left = project(op_dx(phi), N + 1);       // P_N dx phi padded
  const CoeffVec right = op_dx(project(phi, N));          // dx P_N phi
  const CoeffVec formula = commutator_defect(phi, N);
  const double scale =
      std::max(1.0, norm_L2(phi) * std::sqrt(lambda(spec, N + 1)));
  for (int m = 0; m <= N + 1; ++m) {
    const double lm = (m <= N) ? left[m] : 0.0;  // P_N keeps modes 0..N
    const double rm = right[m];
    e.defect = std::max(e.defect, std::abs((lm - rm) - formula[m]) / scale);
  }
  e.passed = e.defect < 1e-13;
  e.detail = "max relative defect = " + format_float(e.defect);
  return e;
}

BasisCheckReport::Entry projection_decay_check() {
  // Pinned case: u(x) = e^{-x^2/2} sin(x) with alpha = 1. The tail norm must
  // fall faster than N^{-2} across N = 8, 16, 32, 64.
  const BasisSpec big{1.0, 96};
  const QuadRule rule = gauss_hermite_rule(2 * (big.n_max + 1), 1.0);
  const CoeffVec u = analyze(
      [](double x) { return std::exp(-0.5 * x * x) * std::sin(x); }, big, rule);
  std::vector<std::pair<double, double>> pts;
  for (int N : {8, 16, 32, 64}) {
    double tail = 0.0;
    for (int n = N + 1; n <= big.n_max; ++n) tail += u[n] * u[n];
    pts.emplace_back(static_cast<double>(N), std::sqrt(tail));
  }
  const GrowthFit fit = fit_growth(pts);
  BasisCheckReport::Entry e;
  e.name = "projection_decay";
  e.defect = fit.exponent;
  e.passed = fit.exponent < -2.0;
  e.detail = "log-log slope = " + format_float(fit.exponent) + " (needs < -2)";
  return e;
}

}  // namespace

BasisCheckReport cmd_basis_check(const RunConfig& cfg, std::ostream& out,
                                 int quad_nodes_override) {
  cfg.validate();
  const BasisSpec spec{cfg.alpha, cfg.n_modes};
  BasisCheckReport report;
  report.entries.push_back(orthonormality_check(spec, quad_nodes_override));
  report.entries.push_back(dx_orthogonality_check(spec));
  report.entries.push_back(operator_identity_check(spec));
  report.entries.push_back(commutator_check(spec));
  report.entries.push_back(projection_decay_check());
  for (const auto& e : report.entries) {
    out << (e.passed ? "ok   " : "FAIL ") << e.name << ": " << e.detail << "\n";
  }
  return report;
}

}  // namespace hermsv

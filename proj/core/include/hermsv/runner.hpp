#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hermsv/config.hpp"
#include "hermsv/reference.hpp"
#include "hermsv/solver.hpp"

namespace hermsv {

/// Time-integrated norms of one run (trapezoid over the adaptive grid).
struct IntegratedNorms {
  double l2_sq = 0.0;     // ||u||^2_{L2(0,T;L2)}
  double dx_l2_sq = 0.0;  // ||D_x u||^2_{L2(0,T;L2)}
  double x_l2_sq = 0.0;   // ||x u||^2_{L2(0,T;L2)}
  double x2_l1 = 0.0;     // ||x^2 u||_{L1(R x (0,T))}; 0 when not recorded
};

struct RunArtifacts {
  RunRecord record;
  IntegratedNorms norms;
  double wall_seconds = 0.0;
};

/// Integrate one truncation without touching the filesystem.
RunArtifacts run_single(const RunConfig& cfg, int N, bool record_x2l1);

/// run: writes profile.csv, norms.csv, summary.json into cfg.output_dir.
/// A solver abort is still written out (partial record, abort reason in
/// summary.json) and reported through the return value.
RunArtifacts cmd_run(const RunConfig& cfg);

struct SweepRow {
  int N = 0;
  bool failed = false;
  std::string failure;
  IntegratedNorms norms;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Fits of the three per-scheme table columns against N; empty when fewer
  /// than two rows succeeded.
  std::vector<std::pair<std::string, GrowthFit>> fits;
};

/// sweep: one run per N in cfg.sweep_Ns (executed concurrently), writes
/// table.csv and growth.json.
SweepResult cmd_sweep(const RunConfig& cfg);

struct CompareReport {
  double l1_error = 0.0;
  double l2_error = 0.0;
  double front_l1_error = 0.0;
  double front_center = 0.0;
  double front_half_width = 0.5;
  double tv_solution = 0.0;
  double tv_reference = 0.0;
  /// TV(u_N) - TV(u_ref) on the grid: the Gibbs-oscillation budget.
  double oscillation_indicator = 0.0;
};

/// compare: runs the scheme, runs the finite-volume oracle, writes
/// errors.json.
CompareReport cmd_compare(const RunConfig& cfg);

struct BasisCheckReport {
  struct Entry {
    std::string name;
    bool passed = false;
    double defect = 0.0;
    std::string detail;
  };
  std::vector<Entry> entries;
  bool all_passed() const;
};

/// basis-check: orthonormality, D_x-orthogonality, coefficient-space operator
/// identities and the projection-decay slope test. quad_nodes_override > 0
/// forces the orthonormality rule to that node count (a deliberately small
/// value makes the check fail and name the offending pair).
/// Prints one line per check to `out`; returns the report.
BasisCheckReport cmd_basis_check(const RunConfig& cfg, std::ostream& out,
                                 int quad_nodes_override = 0);

/// Shared CSV float formatting: 17 significant digits.
std::string format_float(double v);

}  // namespace hermsv

#include "hermsv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hermsv {

int Flux::degree() const {
  int d = 1;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] != 0.0) d = std::max<int>(d, static_cast<int>(j));
  }
  return d;
}

double Flux::operator()(double u) const {
  double v = 0.0;
  for (size_t j = coeffs.size(); j-- > 0;) v = v * u + coeffs[j];
  return v;
}

void SchemeConfig::validate() const {
  basis.validate();
  viscosity.validate(basis.n_max);
  if (flux.coeffs.empty()) {
    throw std::invalid_argument("SchemeConfig: flux has no coefficients");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("SchemeConfig: t_final must be >= 0");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0)) {
    throw std::invalid_argument("SchemeConfig: tolerances must lie in (0, 1)");
  }
  if (record_x2l1 && (!(grid_half_width > 0.0) || !(grid_dx > 0.0))) {
    throw std::invalid_argument("SchemeConfig: grid for the L1 series must be positive");
  }
}

namespace {

double gaussian_profile(double x) { return std::exp(-x * x); }

struct RhsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

GalerkinSystem::GalerkinSystem(const SchemeConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  if (!cfg_.initial) cfg_.initial = gaussian_profile;
  const int N = cfg_.basis.n_max;

  rule_ = make_quadrature(cfg_.basis, cfg_.flux.degree());
  const double scale = 1.0 / std::sqrt(rule_.gauss_exponent);
  const int M = rule_.node_count;
  node_x_.resize(static_cast<size_t>(M));
  node_w_.resize(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    node_x_[static_cast<size_t>(j)] = rule_.nodes[static_cast<size_t>(j)] * scale;
    node_w_[static_cast<size_t>(j)] =
        rule_.folded_weights[static_cast<size_t>(j)] * scale;
  }

  // H_0..H_{N+1} at every node: synthesis uses columns 0..N, the flux
  // analysis all N+2 columns.
  n_basis_cols_ = N + 2;
  const BasisSpec ext{cfg_.basis.alpha, N + 1};
  basis_at_nodes_.resize(static_cast<size_t>(M) * n_basis_cols_);
  for (int j = 0; j < M; ++j) {
    const std::vector<double> h = eval_basis(ext, node_x_[static_cast<size_t>(j)]);
    std::copy(h.begin(), h.end(),
              basis_at_nodes_.begin() + static_cast<size_t>(j) * n_basis_cols_);
  }

  if (cfg_.viscosity.kind == ViscosityKind::HighModeQ) {
    mult_ = make_multipliers(N, cfg_.viscosity.m(N), cfg_.viscosity.family);
    eps_ = cfg_.viscosity.eps(N);
  } else if (cfg_.viscosity.kind == ViscosityKind::SturmLiouville) {
    eps_ = cfg_.viscosity.eps(N);
  }
}

void GalerkinSystem::rhs(const std::vector<double>& u,
                         std::vector<double>& dudt) const {
  const int N = cfg_.basis.n_max;
  const int n = N + 1;
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("rhs: state length does not match the basis");
  }
  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(u[static_cast<size_t>(k)])) {
      throw RhsError("rhs: non-finite state coefficient at mode " + std::to_string(k));
    }
  }
  dudt.assign(static_cast<size_t>(n), 0.0);

  const int M = rule_.node_count;
  // P_{N+1} f(u_N): flux at the nodes, then quadrature against H_0..H_{N+1}.
  std::vector<double> fhat(static_cast<size_t>(N) + 2, 0.0);
  for (int j = 0; j < M; ++j) {
    const double* row = basis_at_nodes_.data() + static_cast<size_t>(j) * n_basis_cols_;
    double uj = 0.0;
    for (int k = 0; k < n; ++k) uj += row[k] * u[static_cast<size_t>(k)];
    const double fj = cfg_.flux(uj);
    if (!std::isfinite(fj)) {
      throw RhsError("rhs: flux evaluation non-finite at node " + std::to_string(j) +
                     " (u = " + std::to_string(uj) + ")");
    }
    const double w = node_w_[static_cast<size_t>(j)] * fj;
    for (int m = 0; m < N + 2; ++m) fhat[static_cast<size_t>(m)] += w * row[m];
  }

  // -dx(P_{N+1} f(u_N)) tested against H_0..H_N.
  const double a2 = cfg_.basis.alpha * cfg_.basis.alpha;
  auto sqrt_lambda = [a2](int k) { return std::sqrt(2.0 * a2 * k); };
  for (int m = 0; m <= N; ++m) {
    double v = 0.0;
    if (m >= 1) v -= 0.5 * sqrt_lambda(m) * fhat[static_cast<size_t>(m) - 1];
    v += 0.5 * sqrt_lambda(m + 1) * fhat[static_cast<size_t>(m) + 1];
    dudt[static_cast<size_t>(m)] = -v;
  }

  switch (cfg_.viscosity.kind) {
    case ViscosityKind::None:
      break;
    case ViscosityKind::SturmLiouville:
      for (int k = 0; k <= N; ++k)
        dudt[static_cast<size_t>(k)] -= eps_ * 2.0 * a2 * k * u[static_cast<size_t>(k)];
      break;
    case ViscosityKind::HighModeQ: {
      // eps * dx(D_x(Q u)); D_x(Q u)_k = sqrt(lambda_{k+1}) q_{k+1} u_{k+1}.
      std::vector<double> d(static_cast<size_t>(N), 0.0);
      for (int k = 0; k < N; ++k) {
        d[static_cast<size_t>(k)] = sqrt_lambda(k + 1) *
                                    mult_.q[static_cast<size_t>(k) + 1] *
                                    u[static_cast<size_t>(k) + 1];
      }
      for (int m = 0; m <= N; ++m) {
        double v = 0.0;
        if (m >= 1 && m - 1 < N) v -= 0.5 * sqrt_lambda(m) * d[static_cast<size_t>(m) - 1];
        if (m + 1 < N) v += 0.5 * sqrt_lambda(m + 1) * d[static_cast<size_t>(m) + 1];
        dudt[static_cast<size_t>(m)] += eps_ * v;
      }
      break;
    }
  }

  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(dudt[static_cast<size_t>(k)])) {
      throw RhsError("rhs: assembly produced non-finite derivative at mode " +
                     std::to_string(k));
    }
  }
}

CoeffVec GalerkinSystem::rhs(const SolverState& state) const {
  std::vector<double> dudt;
  rhs(state.u.values, dudt);
  return CoeffVec{cfg_.basis, std::move(dudt)};
}

CoeffVec GalerkinSystem::initial_state() const {
  return analyze(cfg_.initial, cfg_.basis, rule_);
}

CoeffVec rhs(const SolverState& state, const SchemeConfig& cfg) {
  return GalerkinSystem(cfg).rhs(state);
}

namespace {

// Dormand-Prince 4(5) tableau (FSAL).
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kA71 = 35.0 / 384, kA73 = 500.0 / 1113, kA74 = 125.0 / 192,
                 kA75 = -2187.0 / 6784, kA76 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

constexpr double kSafe = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacMin = 0.1;  // 1/fac2: strongest growth is 10x
constexpr double kFacMax = 5.0;  // 1/fac1: strongest shrink is 5x
constexpr long kMaxSteps = 20'000'000;

double scaled_rms(const std::vector<double>& e, const std::vector<double>& y0,
                  const std::vector<double>& y1, double atol, double rtol) {
  double sum = 0.0;
  for (size_t i = 0; i < e.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = e[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<double>(e.size()));
}

}  // namespace

RunRecord integrate(const SchemeConfig& cfg) {
  const GalerkinSystem sys(cfg);
  const int n = cfg.basis.n_max + 1;
  const double T = cfg.t_final;
  const double atol = cfg.abs_tol, rtol = cfg.rel_tol;

  RunRecord rec;

  // Physical-space grid for the |x^2 u| L1 series, prepared once.
  std::vector<double> grid_basis;  // row i: H_0..H_N at x_i
  std::vector<double> grid_coef;   // trapezoid weight * x_i^2
  int n_pts = 0;
  if (cfg.record_x2l1) {
    const double L = cfg.grid_half_width, dx = cfg.grid_dx;
    n_pts = static_cast<int>(std::floor(2.0 * L / dx + 0.5)) + 1;
    grid_basis.resize(static_cast<size_t>(n_pts) * n);
    grid_coef.resize(static_cast<size_t>(n_pts));
    for (int i = 0; i < n_pts; ++i) {
      const double x = -L + i * dx;
      const std::vector<double> h = eval_basis(cfg.basis, x);
      std::copy(h.begin(), h.end(), grid_basis.begin() + static_cast<size_t>(i) * n);
      grid_coef[static_cast<size_t>(i)] =
          x * x * dx * ((i == 0 || i == n_pts - 1) ? 0.5 : 1.0);
    }
  }

  rec.l2.label = NormLabel::L2;
  rec.dx_l2.label = NormLabel::DxL2;
  rec.x_l2.label = NormLabel::xL2;
  rec.x2_l1.label = NormLabel::x2L1;

  auto record = [&](double t, double h, const std::vector<double>& y) {
    rec.times.push_back(t);
    rec.step_sizes.push_back(h);
    rec.states.push_back(y);
    CoeffVec cv{cfg.basis, y};
    const double l2 = norm_L2(cv);
    rec.l2.times.push_back(t);
    rec.l2.values.push_back(l2);
    rec.dx_l2.times.push_back(t);
    rec.dx_l2.values.push_back(norm_Dx(cv));
    rec.x_l2.times.push_back(t);
    rec.x_l2.values.push_back(norm_xweighted(cv));
    if (cfg.record_x2l1) {
      double sum = 0.0;
      for (int i = 0; i < n_pts; ++i) {
        const double* row = grid_basis.data() + static_cast<size_t>(i) * n;
        double ui = 0.0;
        for (int k = 0; k < n; ++k) ui += row[k] * y[static_cast<size_t>(k)];
        sum += grid_coef[static_cast<size_t>(i)] * std::abs(ui);
      }
      rec.x2_l1.times.push_back(t);
      rec.x2_l1.values.push_back(sum);
    }
  };

  std::vector<double> y;
  try {
    y = sys.initial_state().values;
  } catch (const std::exception& e) {
    rec.abort_reason = std::string("initial projection failed: ") + e.what();
    return rec;
  }

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(static_cast<size_t>(n)), ynew(static_cast<size_t>(n)),
      errv(static_cast<size_t>(n));

  auto eval = [&](const std::vector<double>& yy, std::vector<double>& kk) {
    sys.rhs(yy, kk);
    ++rec.rhs_evaluations;
  };

  double t = 0.0;
  rec.final_state = CoeffVec{cfg.basis, y};
  record(0.0, 0.0, y);
  if (T == 0.0) {
    rec.completed = true;
    return rec;
  }

  std::string last_rhs_error;
  try {
    eval(y, k1);
  } catch (const std::exception& e) {
    rec.abort_reason = std::string("right-hand side failed at t = 0: ") + e.what();
    return rec;
  }

  // Initial step size (standard two-derivative heuristic).
  double h;
  {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sc = atol + rtol * std::abs(y[static_cast<size_t>(i)]);
      d0 += (y[static_cast<size_t>(i)] / sc) * (y[static_cast<size_t>(i)] / sc);
      d1 += (k1[static_cast<size_t>(i)] / sc) * (k1[static_cast<size_t>(i)] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, T);
    double d2 = 0.0;
    bool probe_ok = true;
    try {
      for (int i = 0; i < n; ++i)
        ytmp[static_cast<size_t>(i)] =
            y[static_cast<size_t>(i)] + h0 * k1[static_cast<size_t>(i)];
      eval(ytmp, k2);
      for (int i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::abs(y[static_cast<size_t>(i)]);
        const double q = (k2[static_cast<size_t>(i)] - k1[static_cast<size_t>(i)]) / sc;
        d2 += q * q;
      }
      d2 = std::sqrt(d2 / n) / h0;
    } catch (const std::exception&) {
      probe_ok = false;
    }
    double h1;
    if (!probe_ok || std::max(d1, d2) <= 1e-15) {
      h1 = std::max(1e-6, h0 * 1e-3);
    } else {
      h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    }
    h = std::min({100.0 * h0, h1, T});
  }

  double facold = 1e-4;
  bool last_rejected = false;
  long steps = 0;

  while (t < T) {
    if (++steps > kMaxSteps) {
      rec.abort_reason = "step limit exceeded at t = " + std::to_string(t);
      rec.final_state = CoeffVec{cfg.basis, y};
      return rec;
    }
    if (h < 1e-12 * T) {
      rec.abort_reason = "step size underflow at t = " + std::to_string(t) +
                         (last_rhs_error.empty() ? "" : " (" + last_rhs_error + ")");
      rec.final_state = CoeffVec{cfg.basis, y};
      return rec;
    }
    if (t + h >= T) h = T - t;

    double err = 0.0;
    bool stage_failed = false;
    try {
      for (int i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * kA21 * k1[i];
      eval(ytmp, k2);
      for (int i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
      eval(ytmp, k3);
      for (int i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
      eval(ytmp, k4);
      for (int i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
      eval(ytmp, k5);
      for (int i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                              kA64 * k4[i] + kA65 * k5[i]);
      eval(ytmp, k6);
      for (int i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (kA71 * k1[i] + kA73 * k3[i] + kA74 * k4[i] +
                              kA75 * k5[i] + kA76 * k6[i]);
      eval(ynew, k7);
      for (int i = 0; i < n; ++i)
        errv[i] = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                       kE6 * k6[i] + kE7 * k7[i]);
      err = scaled_rms(errv, y, ynew, atol, rtol);
      if (!std::isfinite(err)) stage_failed = true;
    } catch (const RhsError& e) {
      stage_failed = true;
      last_rhs_error = e.what();
    }

    if (stage_failed) {
      h *= 0.2;
      last_rejected = true;
      ++rec.rejected_steps;
      continue;
    }

    const double fac11 = std::pow(err, kExpo1);
    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      record(t, h, y);
      ++rec.accepted_steps;
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::max(kFacMin, std::min(kFacMax, fac / kSafe));
      facold = std::max(err, 1e-4);
      double hnew = h / fac;
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
    } else {
      h = h / std::min(kFacMax, fac11 / kSafe);
      last_rejected = true;
      ++rec.rejected_steps;
    }
  }

  rec.final_state = CoeffVec{cfg.basis, y};
  rec.completed = true;
  return rec;
}

}  // namespace hermsv

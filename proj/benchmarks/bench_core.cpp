#include <benchmark/benchmark.h>

#include "hermsv/basis.hpp"
#include "hermsv/reference.hpp"
#include "hermsv/solver.hpp"
#include "hermsv/transform.hpp"

namespace {

hermsv::SchemeConfig scheme2_config(int N) {
  hermsv::SchemeConfig cfg;
  cfg.basis = hermsv::BasisSpec{std::sqrt(2.0), N};
  cfg.viscosity.kind = hermsv::ViscosityKind::SturmLiouville;
  cfg.record_x2l1 = false;
  return cfg;
}

void BM_EvalBasis(benchmark::State& state) {
  const hermsv::BasisSpec spec{std::sqrt(2.0), static_cast<int>(state.range(0))};
  for (auto _ : state) {
    auto h = hermsv::eval_basis(spec, 1.3);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_EvalBasis)->Arg(40)->Arg(80);

void BM_QuadratureConstruction(benchmark::State& state) {
  const hermsv::BasisSpec spec{std::sqrt(2.0), static_cast<int>(state.range(0))};
  for (auto _ : state) {
    auto rule = hermsv::make_quadrature(spec, 2);
    benchmark::DoNotOptimize(rule);
  }
}
BENCHMARK(BM_QuadratureConstruction)->Arg(40)->Arg(70);

void BM_GalerkinRhs(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const hermsv::GalerkinSystem sys(scheme2_config(N));
  std::vector<double> u = sys.initial_state().values;
  std::vector<double> dudt(u.size());
  for (auto _ : state) {
    sys.rhs(u, dudt);
    benchmark::DoNotOptimize(dudt);
  }
}
BENCHMARK(BM_GalerkinRhs)->Arg(40)->Arg(70);

void BM_Integrate(benchmark::State& state) {
  auto cfg = scheme2_config(static_cast<int>(state.range(0)));
  cfg.t_final = 0.25;
  for (auto _ : state) {
    auto rec = hermsv::integrate(cfg);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_Integrate)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FvReference(benchmark::State& state) {
  hermsv::FVOracle oracle;
  oracle.cell_count = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto prof = hermsv::fv_reference(0.25, oracle);
    benchmark::DoNotOptimize(prof);
  }
}
BENCHMARK(BM_FvReference)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

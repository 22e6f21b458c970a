#include <benchmark/benchmark.h>

#include "magnomech/entanglement.hpp"
#include "magnomech/fock.hpp"
#include "magnomech/gaussian.hpp"
#include "magnomech/reduced.hpp"
#include "magnomech/sweep.hpp"

using namespace magnomech;

static void BM_WorkingPoint(benchmark::State& state) {
  const PhysicalParams p = reference_params();
  for (auto _ : state) benchmark::DoNotOptimize(derive_working_point(p));
}
BENCHMARK(BM_WorkingPoint);

static void BM_SteadyCovariance(benchmark::State& state) {
  const PhysicalParams p = reference_params();
  const GaussianModel m = build_model(derive_working_point(p), p);
  for (auto _ : state) benchmark::DoNotOptimize(steady_covariance(m));
}
BENCHMARK(BM_SteadyCovariance);

static void BM_ReducedPhonon(benchmark::State& state) {
  const PhysicalParams p = reference_params();
  const WorkingPoint wp = derive_working_point(p);
  for (auto _ : state) benchmark::DoNotOptimize(solve_reduced_phonon(wp, p));
}
BENCHMARK(BM_ReducedPhonon);

static void BM_ResidualContangle(benchmark::State& state) {
  const PhysicalParams p = reference_params();
  const CovarianceMatrix v = steady_covariance(build_model(derive_working_point(p), p));
  for (auto _ : state) benchmark::DoNotOptimize(residual_contangle(v));
}
BENCHMARK(BM_ResidualContangle);

static void BM_EvaluatePoint(benchmark::State& state) {
  const PhysicalParams p = reference_params();
  const std::vector<Observable> obs{Observable::n_b,  Observable::dx2,   Observable::e_bm,
                                    Observable::e_bc, Observable::r_min, Observable::n_b_reduced};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(p, DiffusionVariant::standard, obs));
}
BENCHMARK(BM_EvaluatePoint);

static void BM_EvolveCovariance(benchmark::State& state) {
  PhysicalParams p = reference_params();
  p.gamma_b = 0.01;
  const GaussianModel m = build_model(derive_working_point(p), p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_covariance(m, CovarianceMatrix::vacuum(), 100.0, 1e-3));
  }
}
BENCHMARK(BM_EvolveCovariance)->Unit(benchmark::kMillisecond);

// master equation on a phonon-magnon basis of (n + 1)^2 states, short fixed span
static void BM_LindbladPhononMagnon(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PhysicalParams p;
  p.gamma_b = 0.1;
  p.gamma_m = 0.2;
  p.gamma_c = 0.2;
  p.nbar0 = 0.1;
  WorkingPoint wp;
  wp.chi = 0.05;
  wp.omega_b_prime = 1.1;
  wp.delta_m_prime = 1.0;
  wp.delta_c_prime = 1.0;
  wp.g_cap_bm = 0.05;
  TruncationSpec t{{{Mode::phonon, n}, {Mode::magnon, n}}};
  LindbladOptions opt;
  opt.check_convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_lindblad(LinearizedHamiltonian{wp}, p, t, 5.0, opt));
  state.counters["dim"] = static_cast<double>(t.dimension());
}
BENCHMARK(BM_LindbladPhononMagnon)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SweepGrid(benchmark::State& state) {
  SweepConfig c;
  c.axes = {{"delta_c", -1, 3, 20}, {"delta_m", 0, 3, 20}};
  c.observables = {Observable::n_b, Observable::dx2, Observable::stable};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c, 1));
}
BENCHMARK(BM_SweepGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

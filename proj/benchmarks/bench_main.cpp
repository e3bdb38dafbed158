#include <benchmark/benchmark.h>

#include "spinbath/common_bath.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/separate_baths.hpp"
#include "spinbath/timescale.hpp"

using namespace spinbath;

static void BM_SeparateEvolve(benchmark::State& state) {
  const auto bath = gaussian_approx(static_cast<int>(state.range(0)), GaussianVariant::Sec3a);
  const SeparateBathSystem sys{1.0, 1.0, bath, bath};
  const TwoQubitState s0 = states::singlet();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(sys, s0, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_SeparateEvolve)->Arg(100)->Arg(1000);

static void BM_SymmetricEvolve(benchmark::State& state) {
  const CommonBathSystem sys{1.0, 1.0, 20.0,
                             gaussian_approx(static_cast<int>(state.range(0)), GaussianVariant::Sec3a)};
  const TwoQubitState s0 = states::up_down();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_symmetric(sys, s0, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_SymmetricEvolve)->Arg(100)->Arg(1000);

static void BM_EvolverBuild(benchmark::State& state) {
  const CommonBathSystem sys{1.5, 0.5, 10.0,
                             gaussian_approx(static_cast<int>(state.range(0)), GaussianVariant::Sec3a).pruned(1e-14)};
  for (auto _ : state) benchmark::DoNotOptimize(CommonBathEvolver(sys));
}
BENCHMARK(BM_EvolverBuild)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_EvolverStep(benchmark::State& state) {
  const CommonBathEvolver ev(CommonBathSystem{
      1.5, 0.5, 10.0, gaussian_approx(static_cast<int>(state.range(0)), GaussianVariant::Sec3a).pruned(1e-14)});
  const DensityMatrix4 rho0 = state_to_density(states::r_state(0.5));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.evolve(rho0, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_EvolverStep)->Arg(100)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_BellClass(benchmark::State& state) {
  const CommonBathSystem sys{1.5, 0.5, 10.0, gaussian_approx(100, GaussianVariant::Sec3a)};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell_class_coefficients(sys, 0.5, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_BellClass);

static void BM_Concurrence(benchmark::State& state) {
  const DensityMatrix4 rho = state_to_density(states::werner(0.7));
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

static void BM_OracleBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::FullSystem::build(oracle::Mode::Common, n, {1.0, 0.4, 1.0, {}, {}}));
}
BENCHMARK(BM_OracleBuild)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ScanOptimum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_optimum(0.3));
}
BENCHMARK(BM_ScanOptimum)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

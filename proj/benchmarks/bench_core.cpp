#include "anisobec/gpe3d.hpp"
#include "anisobec/regimes.hpp"
#include "anisobec/schmidt.hpp"
#include "anisobec/special_functions.hpp"
#include "anisobec/variational.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace anisobec;

namespace {

ScaledProblem sample(int d, double N) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  return ProblemSpec{AtomSpecies::rubidium87(),
                     TrapSpec{kTwoPi * 175.0, kTwoPi * 3.5, d}, N}
      .scaled();
}

void BM_polylog(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(specfun::polylog(2.0, 0.25));
}
BENCHMARK(BM_polylog);

void BM_hypergeometric(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(specfun::hypergeometric_pFq(
        {1.0, 1.0, 1.0, 1.5}, {2.0, 2.0, 2.0}, 0.25));
}
BENCHMARK(BM_hypergeometric);

void BM_reduced_model(benchmark::State& state) {
  const auto sp = sample(static_cast<int>(state.range(0)), 1000.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(schmidt::reduced_model(sp));
}
BENCHMARK(BM_reduced_model)->Arg(1)->Arg(2);

void BM_solve_RL(benchmark::State& state) {
  const auto sp = sample(1, 1000.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(schmidt::solve_RL(sp, schmidt::RLMode::Exact));
}
BENCHMARK(BM_solve_RL);

void BM_variational(benchmark::State& state) {
  const auto sp = sample(1, 1000.0);
  for (auto _ : state) {
    const auto sol = variational::solve_quasi1d(sp);
    benchmark::DoNotOptimize(
        variational::variational_observables(sol, sp.N, 512));
  }
}
BENCHMARK(BM_variational);

void BM_relax_steps(benchmark::State& state) {
  // fixed small step count on a small grid: measures per-step solver cost
  const auto sp = sample(1, 200.0);
  const double R = detail::tf_radius_zero_scaled(sp);
  Grid g{32, 32, 128, 5.0, 5.0, std::max(1.6 * R, 4.2 * sp.r0)};
  gpe::Numerics nm;
  nm.fixed_iters = 50;
  nm.coarse_stages = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(gpe::relax_ground_state(sp, g, nm));
}
BENCHMARK(BM_relax_steps)->Unit(benchmark::kMillisecond);

void BM_schmidt_decompose(benchmark::State& state) {
  const auto sp = sample(1, 200.0);
  const double R = detail::tf_radius_zero_scaled(sp);
  Grid g{32, 32, 128, 5.0, 5.0, std::max(1.6 * R, 4.2 * sp.r0)};
  gpe::GroundState st;
  st.psi = schmidt::assemble_wavefunction(sp, g);
  for (auto _ : state)
    benchmark::DoNotOptimize(gpe::schmidt_decompose(st, sp, g));
}
BENCHMARK(BM_schmidt_decompose)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "betaens/ensembles.hpp"
#include "betaens/random.hpp"
#include "betaens/statistics.hpp"

using namespace betaens;

static void BM_SampleTheta(benchmark::State& state) {
  RandomStream rng(1);
  const ThetaParam p(1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_theta(p, rng));
}
BENCHMARK(BM_SampleTheta);

static void BM_SampleSymBeta(benchmark::State& state) {
  RandomStream rng(1);
  const SymBetaParam p(500.0, 501.0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_sym_beta(p, rng));
}
BENCHMARK(BM_SampleSymBeta);

static void BM_Upsilon(benchmark::State& state) {
  double psi = 0.1;
  const std::complex<double> alpha(0.01, -0.02);
  for (auto _ : state) {
    psi += 0.3 + detail::upsilon_unchecked(psi, alpha);
    benchmark::DoNotOptimize(psi);
  }
}
BENCHMARK(BM_Upsilon);

static void BM_DrawPath(benchmark::State& state) {
  const EnsembleSpec spec{static_cast<EnsembleKind>(state.range(1)),
                          static_cast<std::size_t>(state.range(0)), 2.0};
  RandomStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(draw_path(spec, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DrawPath)->Args({1 << 12, 0})->Args({1 << 12, 1});

static void BM_EvolvePhase(benchmark::State& state) {
  const EnsembleSpec spec{EnsembleKind::circular, static_cast<std::size_t>(state.range(0)), 2.0};
  RandomStream rng(3);
  const auto path = draw_path(spec, rng);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_phase(0.7, path, false));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvolvePhase)->Range(1 << 8, 1 << 14);

// Counting one arc: O(n) phase route against O(n²) root finding.
static void BM_CountByPhase(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(4);
  const auto path = draw_circular_path(n, 2.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(count_in_arc(path, n, -0.5, 1.0));
}
BENCHMARK(BM_CountByPhase)->Range(16, 256);

static void BM_CountByRoots(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const EnsembleSpec spec{EnsembleKind::circular, n, 2.0};
  RandomStream rng(4);
  const auto path = draw_path(spec, rng);
  for (auto _ : state) {
    const auto pts = points_from_path(spec, path).points;
    std::size_t c = 0;
    for (double x : pts) c += (-0.5 < x && x <= 1.0);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CountByRoots)->Range(16, 256);

static void BM_TerminalPhases(benchmark::State& state) {
  const EnsembleSpec spec{static_cast<EnsembleKind>(state.range(1)),
                          static_cast<std::size_t>(state.range(0)), 2.0};
  const double thetas[] = {0.3, 1.2, 2.0};
  RandomStream rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(sample_terminal_phases(spec, thetas, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TerminalPhases)->Args({1 << 12, 0})->Args({1 << 12, 1});
BENCHMARK_MAIN();

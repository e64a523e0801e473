#include <benchmark/benchmark.h>

#include "olg/analytics.hpp"
#include "olg/solver.hpp"
#ifdef OLG_BENCH_SWEEP
#include "olg_cli/commands.hpp"
#endif

namespace {

using namespace olg;

EconomyParams economy(double e1, double e2) {
  return EconomyParams(CesAggregator(0.5, 1.0), HousingUtility(0.5, 0.1), 1.1, e1, e2);
}

void BM_BackwardStep(benchmark::State& state) {
  const auto p = economy(105, 95);
  double S_next = 30.0;
  for (auto _ : state) {
    const double S = backward_step(p.housing, p.agg, S_next, 105.0, 95.0 * 1.1);
    benchmark::DoNotOptimize(S);
  }
}
BENCHMARK(BM_BackwardStep);

void BM_SolvePath(benchmark::State& state) {
  const auto p = economy(105, 95);
  const int T = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_path(p, TerminalKind::Bubbly, T));
  state.SetComplexityN(T);
}
BENCHMARK(BM_SolvePath)->Arg(50)->Arg(200)->Arg(800)->Complexity();

void BM_Scenario(benchmark::State& state) {
  const auto p = economy(95, 105);
  const EndowmentPath realized({{0, 95, 105, 1.1}, {40, 105, 95, 1.1}, {80, 95, 105, 1.1}});
  const BeliefSchedule schedule{{{0, EndowmentPath::balanced(95, 105, 1.1), TerminalKind::Fundamental},
                                 {30, EndowmentPath({{0, 95, 105, 1.1}, {40, 105, 95, 1.1}}), TerminalKind::Bubbly},
                                 {70, realized, TerminalKind::Fundamental}}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_scenario(p, schedule, realized, 200));
}
BENCHMARK(BM_Scenario);

void BM_Diagnostics(benchmark::State& state) {
  const auto path = solve_path(economy(105, 95), TerminalKind::Bubbly, 200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_bubble(path));
    benchmark::DoNotOptimize(efficiency_test(path));
  }
}
BENCHMARK(BM_Diagnostics);

#ifdef OLG_BENCH_SWEEP
void BM_Sweep(benchmark::State& state) {
  cli::RunConfig cfg;
  cfg.beta = 0.5;
  cfg.sigma = 1.0;
  cfg.gamma = 0.5;
  cfg.m = 0.1;
  cfg.G = 1.1;
  cfg.e1 = cfg.e2 = 1.0;
  cfg.sweep.resolution = 41;
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cli::cmd_sweep(cfg, threads));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime();
#endif

}  // namespace

BENCHMARK_MAIN();

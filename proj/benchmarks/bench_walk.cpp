#include <benchmark/benchmark.h>

#include <cmath>

#include "wreathwalk/lattice_walk.hpp"

using namespace wreathwalk;

static void BM_WalkLocalTimes(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const LocalTimeField field = walk_local_times(n, seed++);
    benchmark::DoNotOptimize(field.range());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_WalkLocalTimes)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_SqrtFunctional(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const EstimateReport r = functional_estimate(
        [](double b) { return std::sqrt(b); }, n, 4, seed++, 1);
    benchmark::DoNotOptimize(r.mean);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 4 *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SqrtFunctional)->Arg(1 << 14)->Arg(1 << 18);

static void BM_SimulatePath(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const Trajectory t = simulate_srw(n, seed++);
    benchmark::DoNotOptimize(t.positions.back());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SimulatePath)->Arg(1 << 16);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "wreathwalk/ball.hpp"
#include "wreathwalk/estimators.hpp"
#include "wreathwalk/rng.hpp"
#include "wreathwalk/wreath_group.hpp"

using namespace wreathwalk;

static void BM_Multiply(benchmark::State& state) {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec);
  SplitMix64 rng(7);
  Element a = group.identity();
  for (int i = 0; i < 64; ++i) {
    a = group.multiply(a, gens.elements[rng.next_below(gens.size())]);
  }
  const Element g = gens.elements[3];
  for (auto _ : state) {
    benchmark::DoNotOptimize(group.multiply(a, g));
  }
}
BENCHMARK(BM_Multiply);

static void BM_EncodeDecode(benchmark::State& state) {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec);
  SplitMix64 rng(7);
  Element a = group.identity();
  for (int i = 0; i < 64; ++i) {
    a = group.multiply(a, gens.elements[rng.next_below(gens.size())]);
  }
  for (auto _ : state) {
    const std::string enc = group.encode(a);
    benchmark::DoNotOptimize(group.decode(enc));
  }
}
BENCHMARK(BM_EncodeDecode);

static void BM_BfsBall(benchmark::State& state) {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const Ball ball = bfs_ball(spec, radius);
    benchmark::DoNotOptimize(ball.counts.back());
  }
}
BENCHMARK(BM_BfsBall)->Arg(3)->Arg(4)->Arg(5);

static void BM_WreathWalkEndpoint(benchmark::State& state) {
  const GroupSpec spec = parse_group_spec("Z2 wr C2");
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const Element endpoint = sample_walk_endpoint(group, gens, n, seed++);
    benchmark::DoNotOptimize(group.word_length_bracket(endpoint));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_WreathWalkEndpoint)->Arg(1 << 10)->Arg(1 << 14);

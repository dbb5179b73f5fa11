#include <benchmark/benchmark.h>

#include <vector>

#include "mtd/engine.hpp"
#include "mtd/hop_algorithms.hpp"
#include "mtd/permutation.hpp"
#include "mtd/scenario_gen.hpp"

using namespace mtd;

namespace {

const Scenario& full_scale_scenario(int n_common) {
  static std::vector<std::pair<int, Scenario>> cache;
  for (const auto& [nc, s] : cache)
    if (nc == n_common) return s;
  auto p = gen::ScenarioParams::paper();
  p.n_common = n_common;
  cache.emplace_back(n_common, gen::generate_scenario(p, 1, 0));
  return cache.back().second;
}

void BM_PermFromSeed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(perm_from_seed(seed++, n));
}
BENCHMARK(BM_PermFromSeed)->Arg(64)->Arg(256);

void BM_ForwardPick(benchmark::State& state) {
  const auto& s = full_scale_scenario(8);
  const auto& c = s.channel_sets[0];
  Channel t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_pick(c, t, s.n_channels));
    t = t % s.n_channels + 1;
  }
}
BENCHMARK(BM_ForwardPick);

void BM_Step(benchmark::State& state) {
  const auto& s = full_scale_scenario(8);
  const auto states = initial_states(s);
  Hopper h(AlgorithmSpec::parse("prs"), s.n_channels, s.n_users(), 3);
  h.begin_slot(1);
  std::vector<HopDecision> d;
  for (int u = 0; u < s.n_users(); ++u) d.push_back(h.decide(u, s.channel_sets[u], states[u]));
  for (auto _ : state) benchmark::DoNotOptimize(step(s, states, d));
}
BENCHMARK(BM_Step);

void BM_RunDiscovery(benchmark::State& state, const char* algorithm) {
  const auto& s = full_scale_scenario(static_cast<int>(state.range(0)));
  const auto spec = AlgorithmSpec::parse(algorithm);
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_discovery(s, {default_horizon(spec, s.n_channels), spec, seed++}));
}
BENCHMARK_CAPTURE(BM_RunDiscovery, sweep, "sweep")->Arg(2)->Arg(32);
BENCHMARK_CAPTURE(BM_RunDiscovery, pi, "pi")->Arg(2)->Arg(32);
BENCHMARK_CAPTURE(BM_RunDiscovery, prs, "prs")->Arg(2)->Arg(32);
BENCHMARK_CAPTURE(BM_RunDiscovery, stick, "stick:5,30")->Arg(2)->Arg(32);

}  // namespace
BENCHMARK_MAIN();

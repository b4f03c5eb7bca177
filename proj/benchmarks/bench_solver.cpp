// Micro-benchmarks for the solver hot paths: exact search scaling in the
// trajectory count, sweep reuse, and the greedy incumbent on its own.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ers/distributions.hpp"
#include "ers/rng.hpp"
#include "ers/solver.hpp"
#include "ers/trajectory.hpp"

namespace {

ers::ChannelDataset coherent_dataset(std::size_t n, std::size_t horizon, std::uint64_t seed) {
  ers::CounterRng rng(seed, 7);
  ers::ChannelDataset d;
  d.dt = 0.1;
  d.num_trajectories = n;
  d.num_steps = horizon + 1;
  d.num_channels = 2;
  d.channel_names = {"x", "y"};
  d.channel_indices = {0, 1};
  d.values.resize(n * d.num_steps * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = 1.0 + 0.5 * ers::standard_normal_quantile(rng.next_uniform01());
    for (std::size_t t = 0; t <= horizon; ++t) {
      const double s = 0.1 * static_cast<double>(t);
      d.value(i, t, 0) = amp * s + 0.02 * (rng.next_uniform01() - 0.5);
      d.value(i, t, 1) = amp * std::sin(0.5 * s) + 0.02 * (rng.next_uniform01() - 0.5);
    }
  }
  return d;
}

void BM_SolveExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  auto data = coherent_dataset(n, 10, 42 + n);
  auto inst = ers::build_instance(data, static_cast<double>(n - k) / static_cast<double>(n));
  for (auto _ : state) {
    auto sol = ers::solve_exact(inst);
    benchmark::DoNotOptimize(sol.area);
  }
}
BENCHMARK(BM_SolveExact)->Args({50, 5})->Args({100, 10})->Args({500, 10});

void BM_GreedyPeel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto data = coherent_dataset(n, 10, 42 + n);
  for (auto _ : state) {
    auto sel = ers::greedy_peel_selection(data, n - n / 10);
    benchmark::DoNotOptimize(sel.size());
  }
}
BENCHMARK(BM_GreedyPeel)->Arg(100)->Arg(500);

void BM_Sweep(benchmark::State& state) {
  const bool accelerated = state.range(0) != 0;
  ers::DistributionSpec spec;
  spec.kind = ers::DistributionKind::kNormal;
  spec.a = 0.0;
  spec.b = 1.0;
  spec.sample_count = 500;
  spec.seed = 333;
  auto data = ers::sample_dataset(spec, 0);
  std::vector<double> alphas;
  for (int j = 0; j <= 10; ++j) alphas.push_back(1.0 - 0.02 * j);
  for (auto _ : state) {
    auto sw = ers::sweep(data, alphas, {}, accelerated);
    benchmark::DoNotOptimize(sw.entries.size());
  }
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels. Set BAGCHECK_THREADS to cap workers.

#include <benchmark/benchmark.h>

#include "bagcheck/bagging.hpp"
#include "bagcheck/distributions.hpp"
#include "bagcheck/montecarlo.hpp"

namespace {

using namespace bagcheck;

Dataset data(std::size_t n) { return sample(Distribution::gaussian(1.0), n, 1); }

void BM_BaggedVariance(benchmark::State& state, bool parallel) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Dataset x = data(n);
  const BagConfig cfg{n, 2 * n, 7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? bagged_variance(x, cfg) : bagged_variance_serial(x, cfg));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * 2 * n));
}

void BM_BagEstimate(benchmark::State& state, bool parallel) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Dataset x = data(n);
  const BagConfig cfg{n, 2 * n, 7};
  const Estimator mean = [](std::span<const double> b) {
    double s = 0.0;
    for (double v : b) s += v;
    return s / static_cast<double>(b.size());
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? bag_estimate(x, cfg, mean) : bag_estimate_serial(x, cfg, mean));
  }
}

void BM_VarianceTrials(benchmark::State& state, bool parallel) {
  VarianceSimulation sim{Distribution::gaussian(1.0), 10, 10, 20, static_cast<std::size_t>(state.range(0)), 3};
  for (auto _ : state) {
    auto t = parallel ? simulate_variance_trials(sim) : simulate_variance_trials_serial(sim);
    benchmark::DoNotOptimize(t.bagged.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_BaggedVariance, serial, false)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BaggedVariance, parallel, true)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BagEstimate, serial, false)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BagEstimate, parallel, true)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VarianceTrials, serial, false)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VarianceTrials, parallel, true)->Arg(10'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

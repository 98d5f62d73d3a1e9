#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bagcheck/distributions.hpp"
#include "bagcheck/parallel.hpp"
#include "bagcheck/rng.hpp"

namespace bagcheck {

/// Mean of per-trial values with its standard error (sample sd / sqrt(count)).
struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Two-pass, in index order.
Summary summarize(std::span<const double> values);

/// Runs trial(t) for t in [0, trials) across workers and returns the
/// outputs indexed by t. `trial` must be pure in t; the result does not
/// depend on the worker count.
template <class Trial>
std::vector<double> parallel_trials(std::size_t trials, Trial&& trial) {
  std::vector<double> out(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 256) num_threads(worker_count())
  for (std::ptrdiff_t t = 0; t < count; ++t) out[static_cast<std::size_t>(t)] = trial(static_cast<std::size_t>(t));
  return out;
}

/// Reference loop for parallel_trials.
template <class Trial>
std::vector<double> serial_trials(std::size_t trials, Trial&& trial) {
  std::vector<double> out(trials);
  for (std::size_t t = 0; t < trials; ++t) out[t] = trial(t);
  return out;
}

/// Repeated draws of L (size n) with the plain unbiased variance and its
/// bagged version (bag size m, N iterations) computed on the same L.
struct VarianceSimulation {
  Distribution dist = Distribution::gaussian(1.0);
  std::size_t n = 10;
  std::size_t m = 10;
  std::size_t iterations = 20;
  std::size_t trials = 10'000;
  Seed seed = 0;
};

/// Per-trial estimates. Trial t draws L from stream derive_seed(ts, 0) and
/// its bags from seed derive_seed(ts, 1), with ts = derive_seed(seed, t).
struct VarianceTrials {
  std::vector<double> plain;
  std::vector<double> bagged;
};

VarianceTrials simulate_variance_trials(const VarianceSimulation& sim);
VarianceTrials simulate_variance_trials_serial(const VarianceSimulation& sim);

/// One trial of simulate_variance_trials.
void variance_trial(const VarianceSimulation& sim, std::size_t t, double& plain, double& bagged);

struct VarianceMcSummary {
  Summary plain_mean;
  Summary bagged_mean;
  Summary plain_mse;
  Summary bagged_mse;
  Summary gap;  ///< paired (bagged - truth)^2 - (plain - truth)^2
};

VarianceMcSummary summarize_variance_trials(const VarianceTrials& trials, double truth);

}  // namespace bagcheck

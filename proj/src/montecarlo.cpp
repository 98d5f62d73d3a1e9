#include "bagcheck/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "bagcheck/bagging.hpp"
#include "bagcheck/moments.hpp"

namespace bagcheck {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return s;
}

namespace {

void validate(const VarianceSimulation& sim) {
  if (sim.n < 2) throw std::invalid_argument("need at least 2 observations");
  if (sim.m < 2) throw std::invalid_argument("bag size m must be >= 2");
  if (sim.iterations < 1) throw std::invalid_argument("iteration count N must be >= 1");
}

}  // namespace

void variance_trial(const VarianceSimulation& sim, std::size_t t, double& plain, double& bagged) {
  const Seed trial_seed = derive_seed(sim.seed, t);
  Rng rng(derive_seed(trial_seed, 0));
  std::vector<double> data(sim.n);
  for (auto& x : data) x = sim.dist.draw(rng);
  plain = unbiased_variance(data);
  bagged = bagged_variance_serial(data, BagConfig{sim.m, sim.iterations, derive_seed(trial_seed, 1)});
}

VarianceTrials simulate_variance_trials_serial(const VarianceSimulation& sim) {
  validate(sim);
  VarianceTrials out{std::vector<double>(sim.trials), std::vector<double>(sim.trials)};
  for (std::size_t t = 0; t < sim.trials; ++t) variance_trial(sim, t, out.plain[t], out.bagged[t]);
  return out;
}

VarianceTrials simulate_variance_trials(const VarianceSimulation& sim) {
  validate(sim);
  VarianceTrials out{std::vector<double>(sim.trials), std::vector<double>(sim.trials)};
  const auto count = static_cast<std::ptrdiff_t>(sim.trials);
#pragma omp parallel for schedule(dynamic, 256) num_threads(worker_count())
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const auto i = static_cast<std::size_t>(t);
    variance_trial(sim, i, out.plain[i], out.bagged[i]);
  }
  return out;
}

VarianceMcSummary summarize_variance_trials(const VarianceTrials& trials, double truth) {
  if (trials.plain.size() != trials.bagged.size()) throw std::invalid_argument("trial vectors differ in length");
  const std::size_t count = trials.plain.size();
  std::vector<double> plain_err(count);
  std::vector<double> bagged_err(count);
  std::vector<double> gap(count);
  for (std::size_t t = 0; t < count; ++t) {
    plain_err[t] = (trials.plain[t] - truth) * (trials.plain[t] - truth);
    bagged_err[t] = (trials.bagged[t] - truth) * (trials.bagged[t] - truth);
    gap[t] = bagged_err[t] - plain_err[t];
  }
  VarianceMcSummary s;
  s.plain_mean = summarize(trials.plain);
  s.bagged_mean = summarize(trials.bagged);
  s.plain_mse = summarize(plain_err);
  s.bagged_mse = summarize(bagged_err);
  s.gap = summarize(gap);
  return s;
}

}  // namespace bagcheck

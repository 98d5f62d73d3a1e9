#include "bagcheck/bagging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bagcheck/moments.hpp"
#include "bagcheck/parallel.hpp"

namespace bagcheck {

namespace {

// Below this many drawn values per call the OpenMP team costs more than
// it saves.
constexpr std::size_t kParallelWork = 1 << 14;

double variance_of_bag(std::span<const double> data, std::span<const std::size_t> bag) {
  const std::size_t m = bag.size();
  double sum = 0.0;
  for (std::size_t idx : bag) sum += data[idx];
  const double mean = sum / static_cast<double>(m);
  double ss = 0.0;
  for (std::size_t idx : bag) {
    const double d = data[idx] - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(m - 1);
}

double ordered_mean(const std::vector<double>& per_bag) {
  double sum = 0.0;
  for (double v : per_bag) sum += v;
  return sum / static_cast<double>(per_bag.size());
}

void check_source(std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
}

}  // namespace

void BagConfig::validate() const {
  if (m < 2) throw std::invalid_argument("bag size m must be >= 2");
  if (iterations < 1) throw std::invalid_argument("iteration count N must be >= 1");
}

void draw_bag_indices(std::size_t n, std::span<std::size_t> out, Rng& rng) {
  if (n == 0) throw std::invalid_argument("empty dataset");
  for (auto& idx : out) idx = rng.below(n);
}

std::vector<double> draw_bag(std::span<const double> data, std::size_t m, Rng& rng) {
  check_source(data);
  std::vector<double> bag(m);
  for (auto& v : bag) v = data[rng.below(data.size())];
  return bag;
}

double bag_estimate_serial(std::span<const double> data, const BagConfig& cfg, const Estimator& est) {
  check_source(data);
  cfg.validate();
  std::vector<double> per_bag(cfg.iterations);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    Rng rng = Rng::stream(cfg.seed, k);
    per_bag[k] = est(draw_bag(data, cfg.m, rng));
  }
  return ordered_mean(per_bag);
}

double bag_estimate(std::span<const double> data, const BagConfig& cfg, const Estimator& est) {
  check_source(data);
  cfg.validate();
  const auto iterations = static_cast<std::ptrdiff_t>(cfg.iterations);
  std::vector<double> per_bag(cfg.iterations);
  const bool wide = cfg.iterations * cfg.m >= kParallelWork;
#pragma omp parallel for schedule(static) if (wide) num_threads(worker_count())
  for (std::ptrdiff_t k = 0; k < iterations; ++k) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(k));
    per_bag[static_cast<std::size_t>(k)] = est(draw_bag(data, cfg.m, rng));
  }
  return ordered_mean(per_bag);
}

double bagged_variance_serial(std::span<const double> data, const BagConfig& cfg) {
  check_source(data);
  cfg.validate();
  std::vector<std::size_t> bag(cfg.m);
  std::vector<double> per_bag(cfg.iterations);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    Rng rng = Rng::stream(cfg.seed, k);
    draw_bag_indices(data.size(), bag, rng);
    per_bag[k] = variance_of_bag(data, bag);
  }
  return ordered_mean(per_bag);
}

double bagged_variance(std::span<const double> data, const BagConfig& cfg) {
  check_source(data);
  cfg.validate();
  const auto iterations = static_cast<std::ptrdiff_t>(cfg.iterations);
  std::vector<double> per_bag(cfg.iterations);
  const bool wide = cfg.iterations * cfg.m >= kParallelWork;
#pragma omp parallel if (wide) num_threads(worker_count())
  {
    std::vector<std::size_t> bag(cfg.m);
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < iterations; ++k) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(k));
      draw_bag_indices(data.size(), bag, rng);
      per_bag[static_cast<std::size_t>(k)] = variance_of_bag(data, bag);
    }
  }
  return ordered_mean(per_bag);
}

std::optional<std::size_t> variance_estimate_iterations(std::span<const double> data, std::size_t q) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  const double v = unbiased_variance(data);
  const double m4 = central_fourth_moment(data);
  if (!(-2.0 * m4 + 3.0 * v * v < 0.0)) return std::nullopt;
  const double n = static_cast<double>(data.size());
  const double base = std::floor((m4 - v * v) / (2.0 * m4 - 3.0 * v * v) * n) + 1.0;
  const double total = static_cast<double>(q) * base;
  if (!(total < static_cast<double>(kUncapped))) return kUncapped;
  return static_cast<std::size_t>(total);
}

VarianceEstimate estimate_variance(std::span<const double> data, const VarianceEstimateOptions& options) {
  detail::require_pair(data.size());
  for (double x : data) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value in dataset");
  }
  VarianceEstimate result;
  const auto iterations = variance_estimate_iterations(data, options.q);
  if (!iterations) {
    result.estimate = unbiased_variance(data);
    return result;
  }
  const std::size_t cap = options.iteration_cap.value_or(50 * data.size());
  if (cap == 0) throw std::invalid_argument("iteration cap must be >= 1");
  result.used_bagging = true;
  result.iterations = std::min(*iterations, cap);
  result.estimate = bagged_variance(data, BagConfig{data.size(), result.iterations, options.seed});
  return result;
}

}  // namespace bagcheck

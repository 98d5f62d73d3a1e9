#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bagcheck/rng.hpp"

namespace bagcheck {

/// Bag size m, iteration count N and the seed from which bag k's stream
/// is derived as derive_seed(seed, k).
struct BagConfig {
  std::size_t m = 2;
  std::size_t iterations = 1;
  Seed seed = 0;

  /// Throws std::invalid_argument unless m >= 2 and iterations >= 1.
  void validate() const;
};

/// Maps a sample of any size >= 2 to a real. Must be pure: bags may be
/// evaluated concurrently.
using Estimator = std::function<double(std::span<const double>)>;

/// m values drawn uniformly with replacement from `data`.
std::vector<double> draw_bag(std::span<const double> data, std::size_t m, Rng& rng);

/// Index form of draw_bag: fills `out` with uniform draws from [0, n).
/// Consumes the generator exactly as draw_bag does.
void draw_bag_indices(std::size_t n, std::span<std::size_t> out, Rng& rng);

/// Mean of `est` over cfg.iterations bags of size cfg.m. Bags run in
/// parallel; the average is accumulated in bag order, so the result is
/// bit-identical to bag_estimate_serial.
double bag_estimate(std::span<const double> data, const BagConfig& cfg, const Estimator& est);
double bag_estimate_serial(std::span<const double> data, const BagConfig& cfg, const Estimator& est);

/// bag_estimate with est = unbiased_variance, evaluated on index bags
/// without copying values. Same bags and same result as the generic path.
double bagged_variance(std::span<const double> data, const BagConfig& cfg);
double bagged_variance_serial(std::span<const double> data, const BagConfig& cfg);

inline constexpr std::size_t kUncapped = std::numeric_limits<std::size_t>::max();

struct VarianceEstimateOptions {
  std::size_t q = 2;
  Seed seed = 0;
  /// Upper bound on the iteration count. Empty means 50 * n; kUncapped
  /// runs the iteration formula unbounded.
  std::optional<std::size_t> iteration_cap;
};

struct VarianceEstimate {
  double estimate = 0.0;
  bool used_bagging = false;
  std::size_t iterations = 0;
};

/// Kurtosis-gated variance estimator with bag size m = n.
///
/// With v the unbiased variance and m4 the 1/n-normalized fourth central
/// moment of the sample: if -2*m4 + 3*v^2 < 0 the result averages
///   N = q * (floor((m4 - v^2) / (2*m4 - 3*v^2) * n) + 1)
/// bagged unbiased variances (N capped per options); otherwise it is v.
/// Cost is O(N n), i.e. O(n^2) since the formula gives N > n/2.
VarianceEstimate estimate_variance(std::span<const double> data, const VarianceEstimateOptions& options = {});

/// The gate's iteration count before capping, or empty when the gate is
/// closed. Saturates at kUncapped.
std::optional<std::size_t> variance_estimate_iterations(std::span<const double> data, std::size_t q);

}  // namespace bagcheck

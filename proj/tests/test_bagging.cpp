#include <doctest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "bagcheck/bagging.hpp"
#include "bagcheck/distributions.hpp"
#include "bagcheck/exact_oracle.hpp"
#include "bagcheck/moments.hpp"
#include "bagcheck/montecarlo.hpp"
#include "test_support.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace bagcheck;
using bagcheck::testing::rel_close;
using bagcheck::testing::within_sigma;

namespace {

const Estimator kVariance = [](std::span<const double> x) { return unbiased_variance(x); };

}  // namespace

TEST_CASE("draw_bag") {
  Rng rng(1);
  CHECK(draw_bag(std::vector<double>{7.0}, 3, rng) == std::vector<double>{7, 7, 7});
  CHECK_THROWS_AS(draw_bag(std::vector<double>{}, 3, rng), std::invalid_argument);

  Rng a(99), b(99);
  const std::vector<double> data{1, 2, 3, 4, 5};
  CHECK(draw_bag(data, 8, a) == draw_bag(data, 8, b));
}

TEST_CASE("bag positions are uniform over the source indices") {
  const std::size_t draws = 1'000'000;
  std::size_t counts[4][4] = {};
  Rng rng(2024);
  std::vector<std::size_t> bag(4);
  for (std::size_t t = 0; t < draws; ++t) {
    draw_bag_indices(4, bag, rng);
    for (std::size_t pos = 0; pos < 4; ++pos) ++counts[pos][bag[pos]];
  }
  const double sigma = std::sqrt(0.25 * 0.75 / draws);
  for (auto& position : counts) {
    for (std::size_t c : position) CHECK(std::abs(static_cast<double>(c) / draws - 0.25) <= 3.0 * sigma);
  }
}

TEST_CASE("bag_estimate basics") {
  const std::vector<double> constant(6, 3.25);
  CHECK(bag_estimate(constant, BagConfig{4, 10, 1}, kVariance) == 0.0);

  const std::vector<double> data{0.5, -1.0, 2.0, 4.0, 8.0};
  const BagConfig single{5, 1, 77};
  Rng rng = Rng::stream(single.seed, 0);
  CHECK(bag_estimate(data, single, kVariance) == unbiased_variance(draw_bag(data, 5, rng)));

  CHECK_THROWS_AS(bag_estimate(data, BagConfig{1, 5, 0}, kVariance), std::invalid_argument);
  CHECK_THROWS_AS(bag_estimate(data, BagConfig{3, 0, 0}, kVariance), std::invalid_argument);
  CHECK_THROWS_AS(bag_estimate(std::vector<double>{}, BagConfig{3, 1, 0}, kVariance), std::invalid_argument);
}

TEST_CASE("bag_estimate on [0,1] averages to 1/4 over seeds") {
  // Four equally likely bags give variances 0, 1/2, 1/2, 0.
  const std::vector<double> data{0.0, 1.0};
  const auto values = serial_trials(1'000'000, [&](std::size_t s) {
    return bag_estimate(data, BagConfig{2, 1, s}, kVariance);
  });
  const auto mc = summarize(values);
  CHECK(within_sigma(mc.mean, 0.25, mc.std_error));
}

TEST_CASE("parallel and index paths reproduce the serial reference bit for bit") {
  const Dataset data = sample(Distribution::gaussian(2.0), 300, 8);
  for (std::size_t iterations : {1u, 7u, 300u}) {
    const BagConfig cfg{300, iterations, 123};
    const double reference = bag_estimate_serial(data, cfg, kVariance);
    CHECK(bag_estimate(data, cfg, kVariance) == reference);
    CHECK(bagged_variance_serial(data, cfg) == reference);
    CHECK(bagged_variance(data, cfg) == reference);
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    CHECK(bag_estimate(data, cfg, kVariance) == reference);
    CHECK(bagged_variance(data, cfg) == reference);
    omp_set_num_threads(saved);
#endif
  }
}

TEST_CASE("mean over bag sets equals the enumerated E_U for every N") {
  const std::vector<double> data{0.0, 1.0, 3.0};
  const auto exact = enumerate_bag_moments(data, 3, kVariance);
  for (std::size_t N : {1u, 3u}) {
    const auto values = serial_trials(200'000, [&](std::size_t s) {
      return bag_estimate_serial(data, BagConfig{3, N, derive_seed(N, s)}, kVariance);
    });
    const auto mc = summarize(values);
    CAPTURE(N);
    CHECK(within_sigma(mc.mean, exact.mean, mc.std_error));
  }
}

TEST_CASE("variance over bag sets scales as Var_U / N") {
  const std::vector<double> data{-1.0, 0.0, 0.5, 2.0};
  const double var_u = enumerate_bag_moments(data, 4, kVariance).variance();
  for (std::size_t N : {1u, 2u, 4u, 8u}) {
    const auto values = serial_trials(100'000, [&](std::size_t s) {
      return bag_estimate_serial(data, BagConfig{4, N, derive_seed(100 + N, s)}, kVariance);
    });
    double mean = 0.0, ss = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / (values.size() - 1.0);
    CAPTURE(N);
    CHECK(rel_close(var * N, var_u, 0.03));
  }
}

TEST_CASE("estimate_variance gate") {
  const auto constant = estimate_variance(std::vector<double>{5, 5, 5, 5});
  CHECK(constant.estimate == 0.0);
  CHECK_FALSE(constant.used_bagging);
  CHECK(constant.iterations == 0);

  const auto alternating = estimate_variance(std::vector<double>{-1, 1, -1, 1});
  CHECK(alternating.estimate == 4.0 / 3.0);
  CHECK_FALSE(alternating.used_bagging);
  CHECK(alternating.iterations == 0);

  CHECK_THROWS_AS(estimate_variance(std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_variance(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_variance(std::vector<double>{1.0, 2.0}, {.q = 0}), std::invalid_argument);
}

TEST_CASE("estimate_variance iteration count") {
  // mean 0, v = 8/7, m4 = 4: ratio (132/49) / (200/49) = 0.66, times n = 5.28.
  const std::vector<double> spiky{-2, 0, 0, 0, 0, 0, 0, 2};
  REQUIRE(variance_estimate_iterations(spiky, 1).has_value());
  CHECK(*variance_estimate_iterations(spiky, 1) == 6);
  CHECK(*variance_estimate_iterations(spiky, 2) == 12);

  const auto r = estimate_variance(spiky, {.q = 2, .seed = 4});
  CHECK(r.used_bagging);
  CHECK(r.iterations == 12);
  CHECK(r.estimate == bagged_variance(spiky, BagConfig{8, 12, 4}));

  CHECK(estimate_variance(spiky, {.q = 2, .seed = 4, .iteration_cap = 5}).iterations == 5);
  CHECK(estimate_variance(spiky, {.q = 2, .seed = 4, .iteration_cap = kUncapped}).iterations == 12);
  CHECK_THROWS_AS(estimate_variance(spiky, {.q = 2, .seed = 4, .iteration_cap = 0}), std::invalid_argument);
}

TEST_CASE("estimate_variance falls back to the plain estimate and is never negative") {
  for (Seed s = 0; s < 200; ++s) {
    const Dataset d = sample(s % 2 ? Distribution::rademacher() : Distribution::gaussian(1.0), 5 + s % 30, s);
    const auto r = estimate_variance(d, {.q = 2, .seed = s});
    CHECK(r.estimate >= 0.0);
    if (!r.used_bagging) CHECK(r.estimate == unbiased_variance(d));
    if (r.used_bagging) CHECK(r.iterations <= 50 * d.size());
  }
}

TEST_CASE("estimate_variance cost grows quadratically in n") {
  auto seconds = [](std::size_t n) {
    const Dataset d = sample(Distribution::gaussian(1.0), n, 31);
    REQUIRE(estimate_variance(d).used_bagging);
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 5; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      volatile double sink = estimate_variance(d, {.q = 2, .seed = static_cast<Seed>(rep)}).estimate;
      (void)sink;
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
  };
  const double small = seconds(2000);
  const double large = seconds(4000);
  CAPTURE(small);
  CAPTURE(large);
  // Doubling n quadruples N * n; allow a factor of two either way.
  CHECK(large / small >= 2.0);
  CHECK(large / small <= 8.0);
}

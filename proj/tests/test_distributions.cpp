#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bagcheck/distributions.hpp"
#include "bagcheck/moments.hpp"
#include "bagcheck/montecarlo.hpp"
#include "test_support.hpp"

using namespace bagcheck;
using bagcheck::testing::rel_close;
using bagcheck::testing::within_sigma;

TEST_CASE("population moments of each family") {
  const auto g = population_moments(Distribution::gaussian(1.0));
  CHECK(g.mu2 == 1.0);
  CHECK(g.mu4 == 3.0);
  CHECK(*g.kurtosis == 3.0);

  const auto g2 = population_moments(Distribution::gaussian(2.0));
  CHECK(g2.mu2 == 4.0);
  CHECK(g2.mu4 == 48.0);

  const auto u = population_moments(Distribution::uniform(-1.0, 1.0));
  CHECK(rel_close(u.mu2, 1.0 / 3.0, 1e-15));
  CHECK(rel_close(u.mu4, 1.0 / 5.0, 1e-15));
  CHECK(rel_close(*u.kurtosis, 1.8, 1e-15));

  // Moments are about the interval midpoint.
  const auto shifted = population_moments(Distribution::uniform(3.0, 5.0));
  CHECK(shifted.mu2 == u.mu2);
  CHECK(shifted.mu4 == u.mu4);

  const auto r = population_moments(Distribution::rademacher());
  CHECK(r.mu2 == 1.0);
  CHECK(r.mu4 == 1.0);
  CHECK(*r.kurtosis == 1.0);

  const auto degenerate = population_moments(Distribution::two_point_pair(0.0, 0.125));
  CHECK(degenerate.mu2 == 0.125);
  CHECK(degenerate.mu4 == 1.0 / 64.0);
  CHECK(*degenerate.kurtosis == 1.0);

  const double p = 0.3, a = 0.125, q = 0.7;
  const auto t = population_moments(Distribution::two_point_pair(p, a));
  CHECK(rel_close(t.mu2, p + q * a, 1e-15));
  CHECK(rel_close(t.mu4, p + q * a * a, 1e-15));
  CHECK(rel_close(*t.kurtosis, (p + q * a * a) / ((p + q * a) * (p + q * a)), 1e-14));
}

TEST_CASE("bagging gap constants") {
  CHECK(bagging_gap_constant(Distribution::gaussian(1.0)) == -3.0);
  CHECK(bagging_gap_constant(Distribution::uniform(-1.0, 1.0)) == -1.0 / 15.0);
  CHECK(bagging_gap_constant(Distribution::rademacher()) == 1.0);
  for (const auto& d : {Distribution::gaussian(0.3), Distribution::uniform(2.0, 7.5), Distribution::uniform(-3, 0),
                        Distribution::two_point_pair(0.4, 0.2)}) {
    const auto m = population_moments(d);
    CHECK(rel_close(bagging_gap_constant(d), -2.0 * m.mu4 + 3.0 * m.mu2 * m.mu2, 1e-12));
  }
}

TEST_CASE("kurtosis >= 1 and gap sign tracks kurtosis 3/2") {
  std::vector<Distribution> specs;
  for (double sigma : {0.1, 1.0, 7.0}) specs.push_back(Distribution::gaussian(sigma));
  for (double b : {0.5, 1.0, 30.0}) specs.push_back(Distribution::uniform(-2.0, b));
  specs.push_back(Distribution::rademacher());
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    for (double a : {0.01, 0.125, 0.5, 2.0, 9.0}) specs.push_back(Distribution::two_point_pair(p, a));
  }
  for (const auto& d : specs) {
    CAPTURE(to_string(d));
    const auto m = population_moments(d);
    REQUIRE(m.kurtosis.has_value());
    CHECK(*m.kurtosis >= 1.0 - 1e-12);
    CHECK(m.mu4 >= m.mu2 * m.mu2 * (1.0 - 1e-12));
    const double gap = bagging_gap_constant(d);
    // Skip the boundary itself, where rounding decides the sign.
    if (std::abs(*m.kurtosis - 1.5) > 1e-9) CHECK((gap < 0.0) == (*m.kurtosis > 1.5));
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(Distribution::gaussian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::gaussian(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::two_point_pair(1.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::two_point_pair(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("sampling") {
  const Dataset r = sample(Distribution::rademacher(), 1'000'000, 5);
  auto unit = [](double x) { return x == 1.0 || x == -1.0; };
  CHECK(std::all_of(r.values().begin(), r.values().end(), unit));
  CHECK(std::abs(sample_mean(r)) < 0.004);

  const Dataset collapsed = sample(Distribution::two_point_pair(1.0, 0.125), 10'000, 6);
  CHECK(std::all_of(collapsed.values().begin(), collapsed.values().end(), unit));

  const Dataset inner = sample(Distribution::two_point_pair(0.0, 0.25), 10'000, 6);
  CHECK(std::all_of(inner.values().begin(), inner.values().end(),
                    [](double x) { return x == 0.5 || x == -0.5; }));

  const Dataset a = sample(Distribution::gaussian(1.0), 1000, 9);
  const Dataset b = sample(Distribution::gaussian(1.0), 1000, 9);
  const Dataset c = sample(Distribution::gaussian(1.0), 1000, 10);
  CHECK(std::vector<double>(a.values().begin(), a.values().end()) ==
        std::vector<double>(b.values().begin(), b.values().end()));
  CHECK(a[0] != c[0]);
}

TEST_CASE("two-point atoms follow their masses") {
  const double p = 0.3;
  const std::size_t n = 1'000'000;
  const Dataset d = sample(Distribution::two_point_pair(p, 0.125), n, 21);
  std::size_t outer = 0;
  for (double x : d.values()) outer += std::abs(x) == 1.0;
  const double freq = static_cast<double>(outer) / n;
  CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("sample moments match population moments within 3 standard errors") {
  const Distribution specs[] = {Distribution::gaussian(1.0), Distribution::gaussian(0.5),
                                Distribution::uniform(-1.0, 1.0), Distribution::uniform(2.0, 5.0),
                                Distribution::rademacher(), Distribution::two_point_pair(0.3, 0.125),
                                Distribution::two_point_pair(0.05, 0.125)};
  Seed seed = 100;
  for (const auto& dist : specs) {
    CAPTURE(to_string(dist));
    const std::size_t n = 1'000'000;
    const Dataset d = sample(dist, n, seed++);
    double center = 0.0;
    if (const auto* u = std::get_if<Uniform>(&dist.family())) center = 0.5 * (u->lower + u->upper);
    std::vector<double> sq(n), quart(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = d[i] - center;
      sq[i] = dev * dev;
      quart[i] = sq[i] * sq[i];
    }
    const auto pop = population_moments(dist);
    const auto s2 = summarize(sq);
    const auto s4 = summarize(quart);
    CHECK(within_sigma(s2.mean, pop.mu2, s2.std_error + 1e-15));
    CHECK(within_sigma(s4.mean, pop.mu4, s4.std_error + 1e-15));
  }
}

TEST_CASE("distribution strings") {
  CHECK(to_string(parse_distribution("gaussian:1.0")) == "gaussian:1");
  CHECK(to_string(parse_distribution("gaussian")) == "gaussian:1");
  CHECK(to_string(parse_distribution("uniform:-1:1")) == "uniform:-1:1");
  CHECK(to_string(parse_distribution("rademacher")) == "rademacher");
  CHECK(to_string(parse_distribution("twopoint:p=0.3:a=0.125")) == "twopoint:p=0.3:a=0.125");
  CHECK(to_string(parse_distribution("twopoint:a=0.125:p=0.3")) == "twopoint:p=0.3:a=0.125");
  const auto tp = std::get<TwoPointPair>(parse_distribution("twopoint:p=0.3:a=0.125").family());
  CHECK(tp.p == 0.3);
  CHECK(tp.a == 0.125);

  for (const char* bad : {"", "cauchy:1", "gaussian:x", "gaussian:-1", "uniform:1", "uniform:2:1", "rademacher:1",
                          "twopoint:p=0.3", "twopoint:p=0.3:b=1", "twopoint:p=2:a=1", "gaussian:1:2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_distribution(bad), std::invalid_argument);
  }
}

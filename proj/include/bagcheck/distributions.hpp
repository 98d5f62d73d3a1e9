#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "bagcheck/dataset.hpp"
#include "bagcheck/rng.hpp"

namespace bagcheck {

struct Gaussian {
  double sigma = 1.0;
};

struct Uniform {
  double lower = -1.0;
  double upper = 1.0;
};

struct Rademacher {};

/// P(X = +-1) = p/2, P(X = +-sqrt(a)) = (1-p)/2.
struct TwoPointPair {
  double p = 0.5;
  double a = 0.125;
};

/// One of the four families used by the experiments. Construction through
/// the factories validates parameters.
class Distribution {
 public:
  using Family = std::variant<Gaussian, Uniform, Rademacher, TwoPointPair>;

  static Distribution gaussian(double sigma);
  static Distribution uniform(double lower, double upper);
  static Distribution rademacher();
  static Distribution two_point_pair(double p, double a);

  const Family& family() const noexcept { return family_; }

  /// One draw.
  double draw(Rng& rng) const;

 private:
  explicit Distribution(Family f) : family_(f) {}
  Family family_;
};

/// Exact central moments. Uniform moments are taken about (lower+upper)/2.
Moments population_moments(const Distribution& dist);

/// -2 mu4 + 3 mu2^2; negative exactly when kurtosis exceeds 3/2.
double bagging_gap_constant(const Distribution& dist);

/// n i.i.d. draws from a single stream seeded with `seed`.
Dataset sample(const Distribution& dist, std::size_t n, Seed seed);

/// Parses `gaussian:SIGMA`, `uniform:A:B`, `rademacher`, `twopoint:p=P:a=A`.
/// Throws std::invalid_argument on anything else.
Distribution parse_distribution(std::string_view text);

/// Canonical text form accepted by parse_distribution.
std::string to_string(const Distribution& dist);

}  // namespace bagcheck

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "bagcheck/dataset.hpp"

namespace bagcheck {

// Pairwise sums below run over unordered index sets {i, j}, i < j.

double sample_mean(std::span<const double> data);

/// (1/(n-1)) * sum (x_i - mean)^2. Requires n >= 2.
double unbiased_variance(std::span<const double> data);

/// Same estimator through squared pairwise differences:
/// sum_{i<j} (x_i - x_j)^2 / (n(n-1)). O(n^2).
double unbiased_variance_pairwise(std::span<const double> data);

/// (1/n) * sum (x_i - mean)^4, the biased estimator used by the variance
/// algorithm's gate.
double central_fourth_moment(std::span<const double> data);

/// Unbiased variance and biased fourth central moment of a sample.
Moments sample_moments(std::span<const double> data);

/// Symmetric sums of squared pairwise differences d_ij = (x_i - x_j)^2.
///   P: sum over pairs {i,j} of d_ij^2
///   Q: sum over pivot i and pairs {j,k} not containing i of d_ij * d_ik
///   R: sum over unordered pairs of disjoint pairs {{i,j},{k,l}} of d_ij * d_kl
/// They satisfy (sum_{i<j} d_ij)^2 = P + 2Q + 2R.
struct SymmetricSums {
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
};

/// Direct O(n^2) / O(n^3) / O(n^4) loops.
SymmetricSums symmetric_sums_pqr(std::span<const double> data);

/// Expectations of P, Q, R over n i.i.d. centered draws with the given
/// population moments. Requires n >= 2.
SymmetricSums expected_pqr(std::size_t n, const Moments& moments);

namespace detail {

inline void require_nonempty(std::span<const double> data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
}

inline void require_pair(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least 2 observations");
}

}  // namespace detail

}  // namespace bagcheck

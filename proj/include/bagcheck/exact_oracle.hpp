#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bagcheck/bagging.hpp"

namespace bagcheck {

/// Refuse enumerations whose state count exceeds max_states.
struct EnumerationLimit {
  std::uint64_t max_states = 10'000'000;
};

template <class T>
struct BasicExactMoments {
  T mean{};
  T second_moment{};
  T variance() const { return second_moment - mean * mean; }
};

using ExactMoments = BasicExactMoments<double>;

template <class T>
using BasicEstimator = std::function<T(std::span<const T>)>;

namespace detail {

/// base^exponent, or throws std::length_error when it exceeds `limit`.
std::uint64_t checked_state_count(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit,
                                  const std::string& what);

/// Advances a base-`radix` odometer (last digit fastest). Returns false
/// after the final state.
inline bool advance(std::vector<std::size_t>& digits, std::size_t radix) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    if (++digits[pos] < radix) return true;
    digits[pos] = 0;
  }
  return false;
}

/// Estimator value on every bag in {0..n-1}^m, in odometer order.
template <class T>
std::vector<T> all_bag_values(std::span<const T> data, std::size_t m, const BasicEstimator<T>& est,
                              const EnumerationLimit& limit) {
  const std::size_t n = data.size();
  if (n == 0) throw std::invalid_argument("empty dataset");
  const std::uint64_t states = checked_state_count(n, m, limit.max_states, "n^m");
  std::vector<T> values;
  values.reserve(static_cast<std::size_t>(states));
  std::vector<std::size_t> index(m, 0);
  std::vector<T> bag(m);
  do {
    for (std::size_t j = 0; j < m; ++j) bag[j] = data[index[j]];
    values.push_back(est(std::span<const T>(bag)));
  } while (advance(index, n));
  return values;
}

}  // namespace detail

/// Exact E_U and E_U of the square of est(L_U) over all n^m equally likely
/// bags of size m drawn from `data`.
template <class T>
BasicExactMoments<T> enumerate_bag_moments(std::span<const T> data, std::size_t m,
                                           const BasicEstimator<T>& est, const EnumerationLimit& limit = {}) {
  const auto values = detail::all_bag_values(data, m, est, limit);
  T sum{};
  T sum_sq{};
  for (const T& v : values) {
    sum += v;
    sum_sq += v * v;
  }
  const T count = static_cast<T>(values.size());
  return {sum / count, sum_sq / count};
}

/// Exact moments of the bagged estimate over all (n^m)^N bag sets.
template <class T>
BasicExactMoments<T> enumerate_bagset_moments(std::span<const T> data, std::size_t m, std::size_t iterations,
                                              const BasicEstimator<T>& est, const EnumerationLimit& limit = {}) {
  if (iterations < 1) throw std::invalid_argument("iteration count N must be >= 1");
  const auto values = detail::all_bag_values(data, m, est, limit);
  detail::checked_state_count(values.size(), iterations, limit.max_states, "(n^m)^N");
  std::vector<std::size_t> choice(iterations, 0);
  const T N = static_cast<T>(iterations);
  T sum{};
  T sum_sq{};
  std::uint64_t count = 0;
  do {
    T total{};
    for (std::size_t k : choice) total += values[k];
    const T bagged = total / N;
    sum += bagged;
    sum_sq += bagged * bagged;
    ++count;
  } while (detail::advance(choice, values.size()));
  const T states = static_cast<T>(count);
  return {sum / states, sum_sq / states};
}

inline ExactMoments enumerate_bag_moments(std::span<const double> data, std::size_t m, const Estimator& est,
                                          const EnumerationLimit& limit = {}) {
  return enumerate_bag_moments<double>(data, m, BasicEstimator<double>(est), limit);
}

inline ExactMoments enumerate_bagset_moments(std::span<const double> data, std::size_t m, std::size_t iterations,
                                             const Estimator& est, const EnumerationLimit& limit = {}) {
  return enumerate_bagset_moments<double>(data, m, iterations, BasicEstimator<double>(est), limit);
}

/// Closed form of E_U(v(L_U)): sum_{j<k} (x_j - x_k)^2 / n^2, for any m.
double closed_form_bag_mean_variance(std::span<const double> data);

/// Closed form of E_U(v(L_U)^2) as cP*P + cQ*Q + cR*R.
double closed_form_bag_mean_variance_squared(std::span<const double> data, std::size_t m);

struct SecondMomentCoeffs {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Coefficients with E_B(bagged^2) = c1 * sum_u est(L_u)^2
///                                  + c2 * sum_{u != u'} est(L_u) est(L_u').
/// Throws std::range_error if n^-m underflows.
SecondMomentCoeffs bagging_second_moment_coeffs(std::uint64_t n, std::uint64_t m, std::uint64_t iterations);

}  // namespace bagcheck

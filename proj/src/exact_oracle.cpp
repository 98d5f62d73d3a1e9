#include "bagcheck/exact_oracle.hpp"

#include <cfloat>

#include "bagcheck/moments.hpp"

namespace bagcheck {

namespace detail {

std::uint64_t checked_state_count(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit,
                                  const std::string& what) {
  std::uint64_t states = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && states > limit / base) {
      throw std::length_error(what + " = " + std::to_string(base) + "^" + std::to_string(exponent) +
                              " exceeds the enumeration limit of " + std::to_string(limit) + " states");
    }
    states *= base;
  }
  if (states > limit) {
    throw std::length_error(what + " = " + std::to_string(states) + " exceeds the enumeration limit of " +
                            std::to_string(limit) + " states");
  }
  return states;
}

}  // namespace detail

double closed_form_bag_mean_variance(std::span<const double> data) {
  const std::size_t n = data.size();
  detail::require_pair(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = data[j] - data[k];
      sum += d * d;
    }
  }
  const double nd = static_cast<double>(n);
  return sum / (nd * nd);
}

double closed_form_bag_mean_variance_squared(std::span<const double> data, std::size_t m) {
  const std::size_t n = data.size();
  detail::require_pair(n);
  if (m < 2) throw std::invalid_argument("bag size m must be >= 2");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double mm1 = md * (md - 1.0);
  const double n2 = nd * nd;
  const double n3 = n2 * nd;
  const double n4 = n3 * nd;
  const double a = md - 2.0;
  const double b = (md - 2.0) * (md - 3.0);
  const double cP = 1.0 / (n2 * mm1) + 2.0 * a / (n3 * mm1) + b / (n4 * mm1);
  const double cQ = 2.0 * a / (n3 * mm1) + 2.0 * b / (n4 * mm1);
  const double cR = 2.0 * b / (n4 * mm1);
  const SymmetricSums s = symmetric_sums_pqr(data);
  return cP * s.P + cQ * s.Q + cR * s.R;
}

SecondMomentCoeffs bagging_second_moment_coeffs(std::uint64_t n, std::uint64_t m, std::uint64_t iterations) {
  if (n < 1 || m < 1 || iterations < 1) throw std::invalid_argument("n, m and N must be >= 1");
  const double inv_states = std::pow(static_cast<double>(n), -static_cast<double>(m));
  const double inv_states_sq = inv_states * inv_states;
  if (n > 1 && (inv_states_sq < DBL_MIN)) {
    throw std::range_error("n^-2m is not representable as a normal double for n=" + std::to_string(n) +
                           ", m=" + std::to_string(m));
  }
  const double N = static_cast<double>(iterations);
  SecondMomentCoeffs c;
  c.c2 = (N - 1.0) / N * inv_states_sq;
  c.c1 = c.c2 + inv_states / N;
  return c;
}

}  // namespace bagcheck

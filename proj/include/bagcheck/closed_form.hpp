#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "bagcheck/dataset.hpp"

namespace bagcheck {

// Exact finite-sample formulas for the unbiased variance estimator v and
// its bagged version over n i.i.d. draws with population moments (mu2, mu4),
// bags of size m and N iterations. All require n >= 2 and, where m
// appears, m >= 2; violations throw std::invalid_argument.

/// MSE of a bagged estimator split as F/N + G_var + G_bias2.
struct MseBreakdown {
  double F = 0.0;        ///< E_L Var_U of the per-bag estimate
  double G_var = 0.0;    ///< Var_L E_U of the per-bag estimate
  double G_bias2 = 0.0;  ///< squared bias
  std::uint64_t N = 1;
  double total = 0.0;
};

/// E over (L, B) of the bagged variance: (n-1)/n * mu2, for every m and N.
double bagged_variance_mean(std::size_t n, const Moments& mom);

/// F = E_L Var_U(v(L_U)).
double expected_bag_variance_spread(std::size_t n, std::size_t m, const Moments& mom);

/// G_var = Var_L E_U(v(L_U)).
double variance_of_bag_mean(std::size_t n, const Moments& mom);

/// E_L[(E_U v(L_U))^2]; intermediate of G_var, exposed for verification.
double expected_squared_bag_mean(std::size_t n, const Moments& mom);

MseBreakdown mse_bagged_variance(std::size_t n, std::size_t m, std::uint64_t N, const Moments& mom);

/// Var_L(v(L)), which is also its MSE since v is unbiased.
double mse_standard_variance(std::size_t n, const Moments& mom);

struct MseGap {
  double exact = 0.0;       ///< MSE(bagged) - MSE(plain); negative means bagging helps
  double asymptotic = 0.0;  ///< (mu4 - mu2^2)/(N m) + (-2 mu4 + 3 mu2^2)/n^2
};

MseGap mse_gap(std::size_t n, std::size_t m, std::uint64_t N, const Moments& mom);

/// Smallest N strictly above (mu4 - mu2^2)/(2 mu4 - 3 mu2^2) * n^2/m, or
/// empty when 2 mu4 - 3 mu2^2 <= 0 or mu2 == 0 (no N helps asymptotically).
std::optional<std::uint64_t> min_iterations(std::size_t n, std::size_t m, const Moments& mom);

/// True iff kurtosis > 3/2, i.e. -2 mu4 + 3 mu2^2 < 0. Throws
/// std::invalid_argument("degenerate distribution") when mu2 == 0.
bool bagging_beneficial(const Moments& mom);

}  // namespace bagcheck

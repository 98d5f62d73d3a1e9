#include "bagcheck/closed_form.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bagcheck {

namespace {

void require_n(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least 2 observations");
}

void require_m(std::size_t m) {
  if (m < 2) throw std::invalid_argument("bag size m must be >= 2");
}

void require_N(std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("iteration count N must be >= 1");
}

}  // namespace

double bagged_variance_mean(std::size_t n, const Moments& mom) {
  require_n(n);
  const double nd = static_cast<double>(n);
  return (nd - 1.0) / nd * mom.mu2;
}

double expected_bag_variance_spread(std::size_t n, std::size_t m, const Moments& mom) {
  require_n(n);
  require_m(m);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double lead = (nd - 1.0) / (nd * md * (md - 1.0));
  const double shrink = 6.0 - 4.0 * md;
  const double c2 = 3.0 * md - 3.0 + (nd * nd - 2.0 * nd + 3.0) / (nd * nd) * shrink;
  const double c4 = md - 1.0 + (nd - 1.0) / (nd * nd) * shrink;
  return lead * c2 * mom.mu2 * mom.mu2 + lead * c4 * mom.mu4;
}

double expected_squared_bag_mean(std::size_t n, const Moments& mom) {
  require_n(n);
  const double nd = static_cast<double>(n);
  const double n3 = nd * nd * nd;
  return (nd - 1.0) * (nd * nd - 2.0 * nd + 3.0) / n3 * mom.mu2 * mom.mu2 +
         (nd - 1.0) * (nd - 1.0) / n3 * mom.mu4;
}

double variance_of_bag_mean(std::size_t n, const Moments& mom) {
  require_n(n);
  const double nd = static_cast<double>(n);
  const double n3 = nd * nd * nd;
  return (3.0 - nd) * (nd - 1.0) / n3 * mom.mu2 * mom.mu2 + (nd - 1.0) * (nd - 1.0) / n3 * mom.mu4;
}

MseBreakdown mse_bagged_variance(std::size_t n, std::size_t m, std::uint64_t N, const Moments& mom) {
  require_N(N);
  MseBreakdown b;
  b.F = expected_bag_variance_spread(n, m, mom);
  b.G_var = variance_of_bag_mean(n, mom);
  const double nd = static_cast<double>(n);
  b.G_bias2 = mom.mu2 * mom.mu2 / (nd * nd);
  b.N = N;
  b.total = b.F / static_cast<double>(N) + b.G_var + b.G_bias2;
  return b;
}

double mse_standard_variance(std::size_t n, const Moments& mom) {
  require_n(n);
  const double nd = static_cast<double>(n);
  return (3.0 - nd) / (nd * (nd - 1.0)) * mom.mu2 * mom.mu2 + mom.mu4 / nd;
}

MseGap mse_gap(std::size_t n, std::size_t m, std::uint64_t N, const Moments& mom) {
  MseGap gap;
  gap.exact = mse_bagged_variance(n, m, N, mom).total - mse_standard_variance(n, mom);
  const double nd = static_cast<double>(n);
  const double mu2sq = mom.mu2 * mom.mu2;
  gap.asymptotic = (mom.mu4 - mu2sq) / (static_cast<double>(N) * static_cast<double>(m)) +
                   (-2.0 * mom.mu4 + 3.0 * mu2sq) / (nd * nd);
  return gap;
}

std::optional<std::uint64_t> min_iterations(std::size_t n, std::size_t m, const Moments& mom) {
  require_n(n);
  require_m(m);
  if (mom.mu2 == 0.0) return std::nullopt;
  const double mu2sq = mom.mu2 * mom.mu2;
  const double denom = 2.0 * mom.mu4 - 3.0 * mu2sq;
  if (!(denom > 0.0)) return std::nullopt;
  const double nd = static_cast<double>(n);
  const double bound = (mom.mu4 - mu2sq) / denom * (nd * nd / static_cast<double>(m));
  const double next = std::floor(bound) + 1.0;
  if (!(next < 0x1.0p63)) throw std::range_error("minimum iteration count exceeds 2^63");
  return static_cast<std::uint64_t>(next);
}

bool bagging_beneficial(const Moments& mom) {
  if (mom.mu2 == 0.0) throw std::invalid_argument("degenerate distribution");
  return -2.0 * mom.mu4 + 3.0 * mom.mu2 * mom.mu2 < 0.0;
}

}  // namespace bagcheck

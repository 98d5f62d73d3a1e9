#include "bagcheck/moments.hpp"

#include <vector>

namespace bagcheck {

double sample_mean(std::span<const double> data) {
  detail::require_nonempty(data);
  double sum = 0.0;
  for (double x : data) sum += x;
  return sum / static_cast<double>(data.size());
}

double unbiased_variance(std::span<const double> data) {
  detail::require_pair(data.size());
  const double mean = sample_mean(data);
  double ss = 0.0;
  for (double x : data) {
    const double d = x - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(data.size() - 1);
}

double unbiased_variance_pairwise(std::span<const double> data) {
  const std::size_t n = data.size();
  detail::require_pair(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = data[i] - data[j];
      sum += d * d;
    }
  }
  const double nd = static_cast<double>(n);
  return sum / (nd * (nd - 1.0));
}

double central_fourth_moment(std::span<const double> data) {
  const double mean = sample_mean(data);
  double s4 = 0.0;
  for (double x : data) {
    const double d2 = (x - mean) * (x - mean);
    s4 += d2 * d2;
  }
  return s4 / static_cast<double>(data.size());
}

Moments sample_moments(std::span<const double> data) {
  return Moments::make(unbiased_variance(data), central_fourth_moment(data), MomentSource::sample);
}

SymmetricSums symmetric_sums_pqr(std::span<const double> data) {
  detail::require_nonempty(data);
  const std::size_t n = data.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = data[i] - data[j];
      d[i * n + j] = diff * diff;
    }
  }
  auto sq = [&](std::size_t i, std::size_t j) { return d[i * n + j]; };

  SymmetricSums s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s.P += sq(i, j) * sq(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (k == i) continue;
        s.Q += sq(i, j) * sq(i, k);
      }
    }
  }
  // Pairs {i<j} and {k<l} with i < k keep each unordered pair of pairs once.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = i + 1; k < n; ++k) {
        if (k == j) continue;
        for (std::size_t l = k + 1; l < n; ++l) {
          if (l == j) continue;
          s.R += sq(i, j) * sq(k, l);
        }
      }
    }
  }
  return s;
}

SymmetricSums expected_pqr(std::size_t n, const Moments& moments) {
  detail::require_pair(n);
  const double nd = static_cast<double>(n);
  const double mu2sq = moments.mu2 * moments.mu2;
  const double pairs = nd * (nd - 1.0);
  const double triples = pairs * (nd - 2.0);
  const double quads = triples * (nd - 3.0);
  SymmetricSums e;
  e.P = 3.0 * pairs * mu2sq + pairs * moments.mu4;
  e.Q = 1.5 * triples * mu2sq + 0.5 * triples * moments.mu4;
  e.R = 0.5 * quads * mu2sq;
  return e;
}

}  // namespace bagcheck

#include "bagcheck/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bagcheck {

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite value at index " + std::to_string(i));
    }
  }
}

Moments Moments::make(double mu2, double mu4, MomentSource source) {
  if (!std::isfinite(mu2) || !std::isfinite(mu4) || mu2 < 0.0 || mu4 < 0.0) {
    throw std::invalid_argument("moments must be finite and non-negative");
  }
  // Cauchy-Schwarz, with slack for rounding in closed-form inputs.
  if (source == MomentSource::population && mu4 < mu2 * mu2 * (1.0 - 1e-12)) {
    throw std::invalid_argument("population moments violate mu4 >= mu2^2");
  }
  Moments m;
  m.mu2 = mu2;
  m.mu4 = mu4;
  m.source = source;
  if (mu2 > 0.0) m.kurtosis = mu4 / (mu2 * mu2);
  return m;
}

}  // namespace bagcheck

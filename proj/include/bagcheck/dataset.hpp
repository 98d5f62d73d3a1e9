#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bagcheck {

/// Ordered sample of finite real observations.
class Dataset {
 public:
  Dataset() = default;
  /// Throws std::invalid_argument if any value is NaN or infinite.
  explicit Dataset(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  operator std::span<const double>() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

enum class MomentSource { population, sample };

/// Second and fourth central moments plus kurtosis.
///
/// Kurtosis is left empty when mu2 is zero; callers decide what a
/// degenerate distribution means for them.
struct Moments {
  double mu2 = 0.0;
  double mu4 = 0.0;
  std::optional<double> kurtosis;
  MomentSource source = MomentSource::population;

  /// Validates mu2, mu4 >= 0 and, for population moments, mu4 >= mu2^2.
  static Moments make(double mu2, double mu4, MomentSource source = MomentSource::population);
};

}  // namespace bagcheck

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bagcheck/rng.hpp"

namespace bagcheck {

/// Rows of d real features with one real target each, stored row-major.
class RegressionDataset {
 public:
  RegressionDataset() = default;
  /// `inputs` holds targets.size() rows of `dim` features. Throws
  /// std::invalid_argument on size mismatch, dim == 0 or non-finite values.
  RegressionDataset(std::size_t dim, std::vector<double> inputs, std::vector<double> targets);

  std::size_t size() const noexcept { return targets_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const noexcept { return {inputs_.data() + i * dim_, dim_}; }
  double target(std::size_t i) const noexcept { return targets_[i]; }
  std::span<const double> targets() const noexcept { return targets_; }

  /// Rows [first, first + count).
  RegressionDataset slice(std::size_t first, std::size_t count) const;
  /// Rows picked by index, repeats allowed.
  RegressionDataset gather(std::span<const std::size_t> rows) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> inputs_;
  std::vector<double> targets_;
};

/// Affine model y = slopes . x + intercept.
struct LinearModel {
  std::vector<double> slopes;
  double intercept = 0.0;

  double predict(std::span<const double> x) const;
};

/// Least squares with an intercept column; the minimum-norm solution over
/// (slopes, intercept) when the design is rank deficient.
LinearModel fit_ols(const RegressionDataset& train);

struct TreeParams {
  std::optional<std::size_t> max_depth;  ///< empty: unlimited
  std::size_t min_leaf = 1;
};

/// Binary CART regression tree; x goes left when x[feature] <= threshold.
class RegressionTree {
 public:
  struct Node {
    std::size_t feature = 0;
    double threshold = 0.0;
    double value = 0.0;  ///< mean target, meaningful at leaves
    std::size_t left = 0;
    std::size_t right = 0;
    bool leaf = true;
  };

  explicit RegressionTree(std::vector<Node> nodes, std::size_t dim);

  double predict(std::span<const double> x) const;
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Node& root() const { return nodes_.front(); }

 private:
  std::vector<Node> nodes_;
  std::size_t dim_;
};

/// Greedy CART: each split maximizes the reduction in summed squared
/// deviation, searching every midpoint between consecutive distinct sorted
/// feature values. Ties go to the lowest feature, then the lowest threshold.
RegressionTree fit_tree(const RegressionDataset& train, const TreeParams& params = {});

enum class BaseModel { ols, tree };

const char* to_string(BaseModel base);

using FittedModel = std::variant<LinearModel, RegressionTree>;

FittedModel fit_base(const RegressionDataset& train, BaseModel base, const TreeParams& params = {});

double predict(const FittedModel& model, std::span<const double> x);

/// Average of N base models, each fit on a bag of m rows drawn with
/// replacement. Bag k uses the stream derive_seed(seed, k).
class BaggedPredictor {
 public:
  explicit BaggedPredictor(std::vector<FittedModel> members) : members_(std::move(members)) {}

  double predict(std::span<const double> x) const;
  const std::vector<FittedModel>& members() const noexcept { return members_; }

 private:
  std::vector<FittedModel> members_;
};

BaggedPredictor bagged_predictor(const RegressionDataset& train, std::size_t m, std::size_t iterations, Seed seed,
                                 BaseModel base, const TreeParams& params = {});

/// Rows of bag k, consuming its stream exactly as bagged_predictor does.
std::vector<std::size_t> regression_bag_rows(std::size_t n, std::size_t m, Seed seed, std::size_t k);

/// Mean squared prediction error over `test`. Throws std::invalid_argument
/// on a feature-dimension mismatch.
template <class Model>
double mse_on(const Model& model, const RegressionDataset& test, std::size_t model_dim) {
  if (model_dim != test.dim()) throw std::invalid_argument("feature dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double err = model.predict(test.row(i)) - test.target(i);
    sum += err * err;
  }
  return test.size() ? sum / static_cast<double>(test.size()) : 0.0;
}

double mse_on(const LinearModel& model, const RegressionDataset& test);
double mse_on(const RegressionTree& model, const RegressionDataset& test);
double mse_on(const BaggedPredictor& model, const RegressionDataset& test);

struct InverseNFit {
  double a = 0.0;   ///< intercept: the N -> infinity level
  double b = 0.0;   ///< coefficient of 1/N
  double r2 = 0.0;  ///< coefficient of determination
};

/// Ordinary least squares of y on 1/N.
InverseNFit fit_inverse_n(std::span<const double> N, std::span<const double> y);

}  // namespace bagcheck

#include "bagcheck/regressors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bagcheck/bagging.hpp"

namespace bagcheck {

RegressionDataset::RegressionDataset(std::size_t dim, std::vector<double> inputs, std::vector<double> targets)
    : dim_(dim), inputs_(std::move(inputs)), targets_(std::move(targets)) {
  if (dim_ == 0) throw std::invalid_argument("feature dimension must be >= 1");
  if (inputs_.size() != targets_.size() * dim_) throw std::invalid_argument("inputs and targets disagree on row count");
  for (double v : inputs_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
  }
  for (double v : targets_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite target value");
  }
}

RegressionDataset RegressionDataset::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) throw std::out_of_range("slice beyond dataset");
  std::vector<std::size_t> rows(count);
  std::iota(rows.begin(), rows.end(), first);
  return gather(rows);
}

RegressionDataset RegressionDataset::gather(std::span<const std::size_t> rows) const {
  RegressionDataset out;
  out.dim_ = dim_;
  out.inputs_.reserve(rows.size() * dim_);
  out.targets_.reserve(rows.size());
  for (std::size_t r : rows) {
    const auto x = row(r);
    out.inputs_.insert(out.inputs_.end(), x.begin(), x.end());
    out.targets_.push_back(targets_[r]);
  }
  return out;
}

double LinearModel::predict(std::span<const double> x) const {
  double y = intercept;
  for (std::size_t j = 0; j < slopes.size(); ++j) y += slopes[j] * x[j];
  return y;
}

LinearModel fit_ols(const RegressionDataset& train) {
  const std::size_t n = train.size();
  const std::size_t d = train.dim();
  if (n == 0) throw std::invalid_argument("empty training set");
  Eigen::MatrixXd design(n, d + 1);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = train.row(i);
    for (std::size_t j = 0; j < d; ++j) design(i, j) = x[j];
    design(i, d) = 1.0;
    y(i) = train.target(i);
  }
  const Eigen::VectorXd beta = design.completeOrthogonalDecomposition().solve(y);
  LinearModel model;
  model.slopes.assign(beta.data(), beta.data() + d);
  model.intercept = beta(d);
  return model;
}

RegressionTree::RegressionTree(std::vector<Node> nodes, std::size_t dim) : nodes_(std::move(nodes)), dim_(dim) {
  if (nodes_.empty()) throw std::invalid_argument("tree needs at least one node");
}

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t at = 0;
  while (!nodes_[at].leaf) {
    const Node& node = nodes_[at];
    at = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes_[at].value;
}

namespace {

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const RegressionDataset& train, const TreeParams& params) : train_(train), params_(params) {}

  std::vector<RegressionTree::Node> build() {
    std::vector<std::size_t> rows(train_.size());
    std::iota(rows.begin(), rows.end(), 0);
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  std::size_t grow(std::vector<std::size_t>& rows, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    double sum = 0.0;
    for (std::size_t r : rows) sum += train_.target(r);
    nodes_[id].value = sum / static_cast<double>(rows.size());

    if (params_.max_depth && depth >= *params_.max_depth) return id;
    const auto split = best_split(rows);
    if (!split) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (train_.row(r)[split->feature] <= split->threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const std::size_t l = grow(left, depth + 1);
    const std::size_t rgt = grow(right, depth + 1);
    RegressionTree::Node& node = nodes_[id];
    node.leaf = false;
    node.feature = split->feature;
    node.threshold = split->threshold;
    node.left = l;
    node.right = rgt;
    return id;
  }

  // Moving k rows to the left child reduces the summed squared deviation
  // by k_l k_r / n * (mean_l - mean_r)^2, which is never negative.
  std::optional<Split> best_split(const std::vector<std::size_t>& rows) const {
    const std::size_t n = rows.size();
    if (n < 2 * params_.min_leaf) return std::nullopt;
    double total = 0.0;
    for (std::size_t r : rows) total += train_.target(r);

    std::optional<Split> best;
    std::vector<std::size_t> order(rows);
    for (std::size_t f = 0; f < train_.dim(); ++f) {
      auto feature = [&](std::size_t r) { return train_.row(r)[f]; };
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return feature(a) < feature(b); });
      double left_sum = 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        left_sum += train_.target(order[k - 1]);
        const double lo = feature(order[k - 1]);
        const double hi = feature(order[k]);
        if (!(lo < hi)) continue;
        if (k < params_.min_leaf || n - k < params_.min_leaf) continue;
        const double kl = static_cast<double>(k);
        const double kr = static_cast<double>(n - k);
        const double diff = left_sum / kl - (total - left_sum) / kr;
        const double gain = kl * kr / static_cast<double>(n) * diff * diff;
        if (gain > 0.0 && (!best || gain > best->gain)) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = Split{f, threshold, gain};
        }
      }
    }
    return best;
  }

  const RegressionDataset& train_;
  const TreeParams& params_;
  std::vector<RegressionTree::Node> nodes_;
};

}  // namespace

RegressionTree fit_tree(const RegressionDataset& train, const TreeParams& params) {
  if (train.size() == 0) throw std::invalid_argument("empty training set");
  if (params.min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");
  return RegressionTree(TreeBuilder(train, params).build(), train.dim());
}

const char* to_string(BaseModel base) { return base == BaseModel::ols ? "ols" : "tree"; }

FittedModel fit_base(const RegressionDataset& train, BaseModel base, const TreeParams& params) {
  if (base == BaseModel::ols) return fit_ols(train);
  return fit_tree(train, params);
}

double predict(const FittedModel& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

double BaggedPredictor::predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& member : members_) sum += bagcheck::predict(member, x);
  return sum / static_cast<double>(members_.size());
}

std::vector<std::size_t> regression_bag_rows(std::size_t n, std::size_t m, Seed seed, std::size_t k) {
  std::vector<std::size_t> rows(m);
  Rng rng = Rng::stream(seed, k);
  draw_bag_indices(n, rows, rng);
  return rows;
}

BaggedPredictor bagged_predictor(const RegressionDataset& train, std::size_t m, std::size_t iterations, Seed seed,
                                 BaseModel base, const TreeParams& params) {
  if (train.size() == 0) throw std::invalid_argument("empty training set");
  if (m < 1 || iterations < 1) throw std::invalid_argument("bag size and iteration count must be >= 1");
  std::vector<FittedModel> members;
  members.reserve(iterations);
  for (std::size_t k = 0; k < iterations; ++k) {
    members.push_back(fit_base(train.gather(regression_bag_rows(train.size(), m, seed, k)), base, params));
  }
  return BaggedPredictor(std::move(members));
}

double mse_on(const LinearModel& model, const RegressionDataset& test) {
  return mse_on(model, test, model.slopes.size());
}

double mse_on(const RegressionTree& model, const RegressionDataset& test) { return mse_on(model, test, model.dim()); }

double mse_on(const BaggedPredictor& model, const RegressionDataset& test) {
  const auto& first = model.members().front();
  const std::size_t dim = std::holds_alternative<LinearModel>(first)
                              ? std::get<LinearModel>(first).slopes.size()
                              : std::get<RegressionTree>(first).dim();
  return mse_on(model, test, dim);
}

InverseNFit fit_inverse_n(std::span<const double> N, std::span<const double> y) {
  if (N.size() != y.size() || N.size() < 2) throw std::invalid_argument("need >= 2 matching (N, y) points");
  const double count = static_cast<double>(N.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    mx += 1.0 / N[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const double dx = 1.0 / N[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("need at least two distinct N values");
  InverseNFit fit;
  fit.b = sxy / sxx;
  fit.a = my - fit.b * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace bagcheck

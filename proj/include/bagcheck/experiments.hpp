#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bagcheck/csv.hpp"
#include "bagcheck/distributions.hpp"
#include "bagcheck/regressors.hpp"

namespace bagcheck {

/// Parses "a:b:step" into a, a+step, ... up to b inclusive (within 1e-9
/// steps), or a single value "a". Throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view text);

/// parse_grid restricted to positive integers.
std::vector<std::size_t> parse_int_grid(std::string_view text);

// ---------------------------------------------------------------- regression

struct RegressionExperimentConfig {
  std::vector<double> noise_sigmas{0.5, 5.0};
  std::vector<std::size_t> iteration_grid{1, 2, 4, 8, 16, 32, 64};
  std::size_t samples = 1000;
  std::size_t dim = 2;
  double train_fraction = 0.05;
  std::size_t dataset_trials = 10;  ///< draws of L
  std::size_t bag_trials = 100;     ///< bag-set draws per L
  Seed seed = 0;
  TreeParams tree;
};

/// Synthetic linear data: x ~ N(0, I_dim), weights 100 * U(0, 1) per
/// feature drawn once per seed, y = w . x + noise * N(0, 1).
RegressionDataset make_regression_data(std::size_t samples, std::size_t dim, double noise, Seed seed);

/// Columns: N, mean_mse, fitted_a, fitted_b, base_model, noise_sigma,
/// mse_stderr, fit_r2. Test MSE is averaged over dataset_trials x bag_trials;
/// the bag sets for different N share their leading bags.
CsvTable run_regression_experiment(const RegressionExperimentConfig& cfg);

// ------------------------------------------------------------------- mse gap

struct MseGapConfig {
  Distribution dist = Distribution::gaussian(1.0);
  std::vector<std::size_t> n_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::size_t iterations = 50;
  std::size_t trials = 10'000;
  Seed seed = 0;
};

/// Bag size m = n. Columns: distribution, n, mc_gap, exact_gap,
/// asymptotic_gap, mc_stderr.
CsvTable run_mse_gap_experiment(const MseGapConfig& cfg);

// ------------------------------------------------------------ kurtosis sweep

struct KurtosisSweepConfig {
  std::vector<double> p_grid = parse_grid("0.02:0.98:0.02");
  std::size_t n = 10;
  std::size_t iterations = 20;
  double a = 0.125;
  std::size_t trials = 100'000;
  Seed seed = 0;
};

/// Two-point-pair family over p, bag size m = n. Columns: p, kurtosis,
/// mse_bagged_mc, mse_plain_mc, mse_bagged_exact, mse_plain_exact,
/// mse_bagged_stderr, mse_plain_stderr, gap_mc, gap_stderr.
CsvTable run_kurtosis_sweep(const KurtosisSweepConfig& cfg);

/// Points where `gap` changes sign, linearly interpolated in x. Exact zeros
/// count once.
std::vector<double> find_crossings(std::span<const double> x, std::span<const double> gap);

/// Roots in p of the exact MSE gap of the two-point-pair family on
/// [lower, upper], bracketed on a grid of `scan` cells and refined to
/// machine precision.
std::vector<double> exact_gap_roots(std::size_t n, std::size_t iterations, double a, double lower, double upper,
                                    std::size_t scan = 2000);

// ------------------------------------------------------------- diagnostics

struct FormulasConfig {
  Distribution dist = Distribution::gaussian(1.0);
  std::vector<std::size_t> n_grid{10};
  std::optional<std::size_t> m;  ///< empty: m = n
  std::size_t iterations = 20;
};

/// Columns: distribution, n, m, N, kurtosis, mean, F, G_var, bias2,
/// mse_bagged, mse_standard, gap, asymptotic_gap, min_N.
CsvTable run_formulas(const FormulasConfig& cfg);

struct OracleConfig {
  std::vector<double> data{0.0, 1.0};
  std::size_t m = 2;
  std::size_t iterations = 1;
  std::uint64_t max_states = 10'000'000;
};

/// Enumerated bag moments of the unbiased variance next to their closed
/// forms. Columns: quantity, value.
CsvTable run_oracle(const OracleConfig& cfg);

}  // namespace bagcheck

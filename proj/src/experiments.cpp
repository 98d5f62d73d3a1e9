#include "bagcheck/experiments.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bagcheck/closed_form.hpp"
#include "bagcheck/exact_oracle.hpp"
#include "bagcheck/moments.hpp"
#include "bagcheck/montecarlo.hpp"

namespace bagcheck {

namespace {

double grid_number(std::string_view field, std::string_view whole) {
  const std::string s(field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad grid '" + std::string(whole) + "'");
  }
  return v;
}

long long as_cell(std::size_t v) { return static_cast<long long>(v); }

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() == 1) return {grid_number(parts[0], text)};
  if (parts.size() != 3) throw std::invalid_argument("grid must be 'a:b:step' or a single value");
  const double lo = grid_number(parts[0], text);
  const double hi = grid_number(parts[1], text);
  const double step = grid_number(parts[2], text);
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("grid '" + std::string(text) + "' is empty");
  const auto cells = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid;
  for (std::size_t i = 0; i <= cells; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

std::vector<std::size_t> parse_int_grid(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_grid(text)) {
    const double r = std::round(v);
    if (r < 1.0 || std::abs(r - v) > 1e-9) {
      throw std::invalid_argument("grid '" + std::string(text) + "' must hold positive integers");
    }
    out.push_back(static_cast<std::size_t>(r));
  }
  return out;
}

// ---------------------------------------------------------------- regression

RegressionDataset make_regression_data(std::size_t samples, std::size_t dim, double noise, Seed seed) {
  Rng rng(seed);
  std::vector<double> weights(dim);
  for (auto& w : weights) w = 100.0 * rng.uniform01();
  std::vector<double> inputs(samples * dim);
  std::vector<double> targets(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    double y = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = rng.normal();
      inputs[i * dim + j] = x;
      y += weights[j] * x;
    }
    targets[i] = y + noise * rng.normal();
  }
  return RegressionDataset(dim, std::move(inputs), std::move(targets));
}

CsvTable run_regression_experiment(const RegressionExperimentConfig& cfg) {
  if (cfg.iteration_grid.empty() || cfg.noise_sigmas.empty()) throw std::invalid_argument("empty parameter grid");
  if (cfg.dataset_trials < 1 || cfg.bag_trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::size_t max_n = 0;
  for (std::size_t N : cfg.iteration_grid) {
    if (N < 1) throw std::invalid_argument("iteration counts must be >= 1");
    max_n = std::max(max_n, N);
  }
  const auto train_size = static_cast<std::size_t>(std::round(cfg.train_fraction * static_cast<double>(cfg.samples)));
  if (train_size < 1 || train_size >= cfg.samples) throw std::invalid_argument("train fraction leaves no train or test rows");

  CsvTable table({"N", "mean_mse", "fitted_a", "fitted_b", "base_model", "noise_sigma", "mse_stderr", "fit_r2"});
  const std::size_t grid = cfg.iteration_grid.size();
  for (BaseModel base : {BaseModel::ols, BaseModel::tree}) {
    for (std::size_t s = 0; s < cfg.noise_sigmas.size(); ++s) {
      const double sigma = cfg.noise_sigmas[s];
      const std::size_t trials = cfg.dataset_trials * cfg.bag_trials;
      // mse[t * grid + g]: trial t = (dataset d, bag set b), grid point g.
      std::vector<double> mse(trials * grid);
      const Seed sigma_seed = derive_seed(cfg.seed, s);
      std::vector<RegressionDataset> trains;
      std::vector<RegressionDataset> tests;
      for (std::size_t d = 0; d < cfg.dataset_trials; ++d) {
        const auto all = make_regression_data(cfg.samples, cfg.dim, sigma, derive_seed(sigma_seed, d));
        trains.push_back(all.slice(0, train_size));
        tests.push_back(all.slice(train_size, cfg.samples - train_size));
      }
      const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
      for (std::ptrdiff_t ti = 0; ti < count; ++ti) {
        const auto t = static_cast<std::size_t>(ti);
        const std::size_t d = t / cfg.bag_trials;
        const RegressionDataset& train = trains[d];
        const RegressionDataset& test = tests[d];
        const Seed bag_seed = derive_seed(derive_seed(sigma_seed, cfg.dataset_trials + d), t % cfg.bag_trials);
        // Running sum of member predictions: the first N members are exactly
        // bagged_predictor(train, train_size, N, bag_seed, base).
        std::vector<double> running(test.size(), 0.0);
        std::size_t fitted = 0;
        for (std::size_t g = 0; g < grid; ++g) {
          const std::size_t N = cfg.iteration_grid[g];
          if (N < fitted) {
            std::fill(running.begin(), running.end(), 0.0);
            fitted = 0;
          }
          for (; fitted < N; ++fitted) {
            const auto member =
                fit_base(train.gather(regression_bag_rows(train.size(), train_size, bag_seed, fitted)), base, cfg.tree);
            for (std::size_t i = 0; i < test.size(); ++i) running[i] += predict(member, test.row(i));
          }
          double sum = 0.0;
          for (std::size_t i = 0; i < test.size(); ++i) {
            const double err = running[i] / static_cast<double>(N) - test.target(i);
            sum += err * err;
          }
          mse[t * grid + g] = sum / static_cast<double>(test.size());
        }
      }

      std::vector<double> Ns;
      std::vector<double> means;
      std::vector<Summary> summaries;
      for (std::size_t g = 0; g < grid; ++g) {
        std::vector<double> column(trials);
        for (std::size_t t = 0; t < trials; ++t) column[t] = mse[t * grid + g];
        summaries.push_back(summarize(column));
        Ns.push_back(static_cast<double>(cfg.iteration_grid[g]));
        means.push_back(summaries.back().mean);
      }
      InverseNFit fit;
      if (grid >= 2) fit = fit_inverse_n(Ns, means);
      for (std::size_t g = 0; g < grid; ++g) {
        table.add_row({as_cell(cfg.iteration_grid[g]), summaries[g].mean, fit.a, fit.b, std::string(to_string(base)),
                       sigma, summaries[g].std_error, fit.r2});
      }
    }
  }
  return table;
}

// ------------------------------------------------------------------- mse gap

CsvTable run_mse_gap_experiment(const MseGapConfig& cfg) {
  if (cfg.n_grid.empty()) throw std::invalid_argument("empty n grid");
  if (cfg.trials < 2) throw std::invalid_argument("trials must be >= 2");
  const Moments mom = population_moments(cfg.dist);
  const std::string label = to_string(cfg.dist);
  CsvTable table({"distribution", "n", "mc_gap", "exact_gap", "asymptotic_gap", "mc_stderr"});
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const std::size_t n = cfg.n_grid[i];
    VarianceSimulation sim{cfg.dist, n, n, cfg.iterations, cfg.trials, derive_seed(cfg.seed, i)};
    const auto mc = summarize_variance_trials(simulate_variance_trials(sim), mom.mu2);
    const auto gap = mse_gap(n, n, cfg.iterations, mom);
    table.add_row({label, as_cell(n), mc.gap.mean, gap.exact, gap.asymptotic, mc.gap.std_error});
  }
  return table;
}

// ------------------------------------------------------------ kurtosis sweep

CsvTable run_kurtosis_sweep(const KurtosisSweepConfig& cfg) {
  if (cfg.p_grid.empty()) throw std::invalid_argument("empty p grid");
  if (cfg.trials < 2) throw std::invalid_argument("trials must be >= 2");
  CsvTable table({"p", "kurtosis", "mse_bagged_mc", "mse_plain_mc", "mse_bagged_exact", "mse_plain_exact",
                  "mse_bagged_stderr", "mse_plain_stderr", "gap_mc", "gap_stderr"});
  for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
    const double p = cfg.p_grid[i];
    const Distribution dist = Distribution::two_point_pair(p, cfg.a);
    const Moments mom = population_moments(dist);
    VarianceSimulation sim{dist, cfg.n, cfg.n, cfg.iterations, cfg.trials, derive_seed(cfg.seed, i)};
    const auto mc = summarize_variance_trials(simulate_variance_trials(sim), mom.mu2);
    table.add_row({p, mom.kurtosis.value_or(std::numeric_limits<double>::quiet_NaN()), mc.bagged_mse.mean,
                   mc.plain_mse.mean, mse_bagged_variance(cfg.n, cfg.n, cfg.iterations, mom).total,
                   mse_standard_variance(cfg.n, mom), mc.bagged_mse.std_error, mc.plain_mse.std_error, mc.gap.mean,
                   mc.gap.std_error});
  }
  return table;
}

std::vector<double> find_crossings(std::span<const double> x, std::span<const double> gap) {
  if (x.size() != gap.size()) throw std::invalid_argument("x and gap differ in length");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double g0 = gap[i];
    const double g1 = gap[i + 1];
    if (g0 == 0.0) {
      if (out.empty() || out.back() != x[i]) out.push_back(x[i]);
    } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
      out.push_back(x[i] + (x[i + 1] - x[i]) * g0 / (g0 - g1));
    }
  }
  if (!x.empty() && gap.back() == 0.0) out.push_back(x.back());
  return out;
}

std::vector<double> exact_gap_roots(std::size_t n, std::size_t iterations, double a, double lower, double upper,
                                    std::size_t scan) {
  auto gap = [&](double p) {
    return mse_gap(n, n, iterations, population_moments(Distribution::two_point_pair(p, a))).exact;
  };
  std::vector<double> roots;
  const double width = (upper - lower) / static_cast<double>(scan);
  double left = lower;
  double g_left = gap(left);
  for (std::size_t i = 1; i <= scan; ++i) {
    const double right = i == scan ? upper : lower + width * static_cast<double>(i);
    const double g_right = gap(right);
    if (g_left == 0.0) {
      roots.push_back(left);
    } else if ((g_left < 0.0) != (g_right < 0.0) && g_right != 0.0) {
      std::uintmax_t max_iter = 200;
      const auto bracket = boost::math::tools::toms748_solve(gap, left, right, g_left, g_right,
                                                             boost::math::tools::eps_tolerance<double>(52), max_iter);
      roots.push_back(0.5 * (bracket.first + bracket.second));
    }
    left = right;
    g_left = g_right;
  }
  if (g_left == 0.0) roots.push_back(left);
  return roots;
}

// ------------------------------------------------------------- diagnostics

CsvTable run_formulas(const FormulasConfig& cfg) {
  const Moments mom = population_moments(cfg.dist);
  const std::string label = to_string(cfg.dist);
  CsvTable table({"distribution", "n", "m", "N", "kurtosis", "mean", "F", "G_var", "bias2", "mse_bagged",
                  "mse_standard", "gap", "asymptotic_gap", "min_N"});
  for (std::size_t n : cfg.n_grid) {
    const std::size_t m = cfg.m.value_or(n);
    const auto mse = mse_bagged_variance(n, m, cfg.iterations, mom);
    const auto gap = mse_gap(n, m, cfg.iterations, mom);
    const auto min_n = min_iterations(n, m, mom);
    table.add_row({label, as_cell(n), as_cell(m), as_cell(cfg.iterations),
                   mom.kurtosis.value_or(std::numeric_limits<double>::quiet_NaN()), bagged_variance_mean(n, mom),
                   mse.F, mse.G_var, mse.G_bias2, mse.total, mse_standard_variance(n, mom), gap.exact, gap.asymptotic,
                   min_n ? CsvTable::Cell(static_cast<long long>(*min_n)) : CsvTable::Cell(std::string("none"))});
  }
  return table;
}

CsvTable run_oracle(const OracleConfig& cfg) {
  const Dataset data(cfg.data);
  const EnumerationLimit limit{cfg.max_states};
  const Estimator est = [](std::span<const double> bag) { return unbiased_variance(bag); };
  const auto bag = enumerate_bag_moments(data, cfg.m, est, limit);
  const auto bagset = enumerate_bagset_moments(data, cfg.m, cfg.iterations, est, limit);
  const auto coeffs = bagging_second_moment_coeffs(data.size(), cfg.m, cfg.iterations);

  CsvTable table({"quantity", "value"});
  auto row = [&](const char* name, double v) { table.add_row({std::string(name), v}); };
  row("eu_mean", bag.mean);
  row("eu_mean_closed_form", closed_form_bag_mean_variance(data));
  row("eu_second_moment", bag.second_moment);
  row("eu_second_moment_closed_form", closed_form_bag_mean_variance_squared(data, cfg.m));
  row("varu", bag.variance());
  row("bagset_mean", bagset.mean);
  row("bagset_variance", bagset.variance());
  row("varu_over_N", bag.variance() / static_cast<double>(cfg.iterations));
  row("c1", coeffs.c1);
  row("c2", coeffs.c2);
  return table;
}

}  // namespace bagcheck

// bagcheck: experiment runner for bagged variance estimation.
//
//   bagcheck <experiment> [--dist SPEC] [--n-grid a:b:step] [--N INT] [--m INT]
//                         [--trials INT] [--seed INT] [--q INT]
//                         [--p-grid a:b:step] [--a REAL] [--out PATH]
//
// Exit codes: 0 success, 1 runtime or numeric error, 2 usage error.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bagcheck/bagging.hpp"
#include "bagcheck/experiments.hpp"
#include "bagcheck/moments.hpp"

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string dist;
  std::string n_grid;
  std::optional<std::size_t> n;
  std::optional<std::size_t> N;
  std::optional<std::size_t> m;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::size_t q = 2;
  std::string p_grid;
  std::optional<double> a;
  std::string out;
  std::string data;
  std::string noise;
  std::uint64_t max_states = 10'000'000;
  std::optional<std::size_t> cap;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + field + "' in list '" + text + "'");
    }
  }
  if (values.empty()) throw UsageError("empty list");
  return values;
}

// Anything thrown while turning flags into configs is a usage error.
template <class F>
auto usage(F&& build) {
  try {
    return build();
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

bagcheck::Distribution distribution_or(const Args& args, const char* fallback) {
  return usage([&] { return bagcheck::parse_distribution(args.dist.empty() ? fallback : args.dist); });
}

void report_crossings(const bagcheck::CsvTable& table, const bagcheck::KurtosisSweepConfig& cfg) {
  std::vector<double> p;
  std::vector<double> gap;
  for (std::size_t r = 0; r < table.rows().size(); ++r) {
    p.push_back(table.real(r, "p"));
    gap.push_back(table.real(r, "gap_mc"));
  }
  auto print = [](const char* what, const std::vector<double>& xs) {
    std::cerr << what << ':';
    for (double x : xs) std::cerr << ' ' << bagcheck::format_shortest(x);
    std::cerr << (xs.empty() ? " none\n" : "\n");
  };
  print("mc crossings (p)", bagcheck::find_crossings(p, gap));
  print("exact crossings (p)",
        bagcheck::exact_gap_roots(cfg.n, cfg.iterations, cfg.a, cfg.p_grid.front(), cfg.p_grid.back()));
}

int run(const std::string& command, const Args& args) {
  using namespace bagcheck;
  if (command == "regression") {
    auto cfg = usage([&] {
      RegressionExperimentConfig c;
      if (!args.n_grid.empty()) c.iteration_grid = parse_int_grid(args.n_grid);
      if (args.trials) c.bag_trials = *args.trials;
      if (!args.noise.empty()) c.noise_sigmas = parse_list(args.noise);
      c.seed = args.seed;
      return c;
    });
    write_csv(run_regression_experiment(cfg), args.out);
  } else if (command == "mse-gap") {
    auto cfg = usage([&] {
      MseGapConfig c;
      c.dist = distribution_or(args, "gaussian:1");
      if (!args.n_grid.empty()) c.n_grid = parse_int_grid(args.n_grid);
      if (args.N) c.iterations = *args.N;
      if (args.trials) c.trials = *args.trials;
      c.seed = args.seed;
      return c;
    });
    write_csv(run_mse_gap_experiment(cfg), args.out);
  } else if (command == "kurtosis-sweep") {
    auto cfg = usage([&] {
      KurtosisSweepConfig c;
      if (!args.p_grid.empty()) c.p_grid = parse_grid(args.p_grid);
      if (args.n) c.n = *args.n;
      if (args.N) c.iterations = *args.N;
      if (args.a) c.a = *args.a;
      if (args.trials) c.trials = *args.trials;
      c.seed = args.seed;
      return c;
    });
    const auto table = run_kurtosis_sweep(cfg);
    write_csv(table, args.out);
    report_crossings(table, cfg);
  } else if (command == "formulas") {
    auto cfg = usage([&] {
      FormulasConfig c;
      c.dist = distribution_or(args, "gaussian:1");
      if (args.n) c.n_grid = {*args.n};
      if (!args.n_grid.empty()) c.n_grid = parse_int_grid(args.n_grid);
      c.m = args.m;
      if (args.N) c.iterations = *args.N;
      return c;
    });
    write_csv(run_formulas(cfg), args.out);
  } else if (command == "oracle") {
    auto cfg = usage([&] {
      OracleConfig c;
      if (!args.data.empty()) c.data = parse_list(args.data);
      if (args.m) c.m = *args.m;
      if (args.N) c.iterations = *args.N;
      c.max_states = args.max_states;
      return c;
    });
    write_csv(run_oracle(cfg), args.out);
  } else if (command == "estimate") {
    const auto values = usage([&] {
      if (!args.data.empty()) return parse_list(args.data);
      const auto d = sample(distribution_or(args, "gaussian:1"), args.n.value_or(100), args.seed);
      return std::vector<double>(d.values().begin(), d.values().end());
    });
    VarianceEstimateOptions options;
    options.q = args.q;
    options.seed = args.seed;
    options.iteration_cap = args.cap;
    const auto result = estimate_variance(values, options);
    CsvTable table({"n", "unbiased_variance", "estimate", "used_bagging", "N"});
    table.add_row({static_cast<long long>(values.size()), unbiased_variance(values), result.estimate,
                   static_cast<long long>(result.used_bagging), static_cast<long long>(result.iterations)});
    write_csv(table, args.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bagged variance estimation: exact formulas, enumeration oracle and Monte-Carlo experiments"};
  app.require_subcommand(1, 1);
  Args args;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", args.seed, "Master RNG seed");
    sub->add_option("--out", args.out, "Output CSV path (default: stdout)");
  };

  auto* regression = app.add_subcommand("regression", "Bagged OLS and CART test MSE as a function of N");
  regression->add_option("--n-grid", args.n_grid, "Iteration grid a:b:step (default 1,2,4,...,64)");
  regression->add_option("--trials", args.trials, "Bag-set draws per dataset (default 100)");
  regression->add_option("--noise", args.noise, "Comma-separated noise sigmas (default 0.5,5)");
  common(regression);

  auto* gap = app.add_subcommand("mse-gap", "MSE(bagged) - MSE(plain) against n, with m = n");
  gap->add_option("--dist", args.dist, "Distribution spec (default gaussian:1)");
  gap->add_option("--n-grid", args.n_grid, "Sample sizes a:b:step (default 10:100:10)");
  gap->add_option("--N", args.N, "Bagging iterations (default 50)");
  gap->add_option("--trials", args.trials, "Monte-Carlo trials per n (default 10000)");
  common(gap);

  auto* sweep = app.add_subcommand("kurtosis-sweep", "Two-point-pair sweep over p around kurtosis 3/2");
  sweep->add_option("--p-grid", args.p_grid, "p grid a:b:step (default 0.02:0.98:0.02)");
  sweep->add_option("--n", args.n, "Sample size (default 10)");
  sweep->add_option("--N", args.N, "Bagging iterations (default 20)");
  sweep->add_option("--a", args.a, "Squared inner atom (default 0.125)");
  sweep->add_option("--trials", args.trials, "Monte-Carlo trials per p (default 100000)");
  common(sweep);

  auto* formulas = app.add_subcommand("formulas", "Closed-form mean, F, G, MSEs, gap and minimum N");
  formulas->add_option("--dist", args.dist, "Distribution spec (default gaussian:1)");
  formulas->add_option("--n", args.n, "Sample size");
  formulas->add_option("--n-grid", args.n_grid, "Sample sizes a:b:step");
  formulas->add_option("--m", args.m, "Bag size (default n)");
  formulas->add_option("--N", args.N, "Bagging iterations (default 20)");
  formulas->add_option("--out", args.out, "Output CSV path (default: stdout)");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive bag enumeration against closed forms");
  oracle->group("");
  oracle->add_option("--data", args.data, "Comma-separated dataset (default 0,1)");
  oracle->add_option("--m", args.m, "Bag size (default 2)");
  oracle->add_option("--N", args.N, "Bagging iterations for bag-set enumeration (default 1)");
  oracle->add_option("--max-states", args.max_states, "Enumeration limit");
  oracle->add_option("--out", args.out, "Output CSV path (default: stdout)");

  auto* estimate = app.add_subcommand("estimate", "Kurtosis-gated variance estimate of one sample");
  estimate->add_option("--data", args.data, "Comma-separated dataset; otherwise a sample of --dist");
  estimate->add_option("--dist", args.dist, "Distribution spec to sample (default gaussian:1)");
  estimate->add_option("--n", args.n, "Sample size when drawing (default 100)");
  estimate->add_option("--q", args.q, "Iteration multiplier q (default 2)")->check(CLI::PositiveNumber);
  estimate->add_option("--cap", args.cap, "Iteration cap (default 50 n)");
  common(estimate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "percolab/graph_core.hpp"
#include "percolab/power_graph.hpp"

namespace percolab {

struct ExperimentConfig {
  explicit ExperimentConfig(GraphView g) : graph(std::move(g)) {}

  GraphView graph;
  /// Exactly one of lambda (target E[X]) and p (retention override) is set.
  std::optional<double> lambda;
  std::optional<double> p;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
  int r_max = 4;
  unsigned workers = 1;
};

/// A binomial proportion with its Wilson 95% interval.
struct ProportionEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double value = 0;
  double lo = 0;
  double hi = 0;
};

struct FactorialMoment {
  int r = 0;
  double estimate = 0;
  double standard_error = 0;
};

struct GraphSummary {
  std::string kind;  // "power" or "explicit"
  std::uint32_t k = 0;
  int n = 0;
  std::uint64_t order = 0;
  std::uint64_t size = 0;
};

struct ExperimentReport {
  GraphSummary graph;
  double p = 0;
  double q = 0;
  /// Poisson reference: the target when given, else the implied E[X].
  double lambda = 0;
  bool lambda_given = false;
  double expected_isolated = 0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;

  ProportionEstimate connected;
  ProportionEstimate no_isolated;
  ProportionEstimate middle_component;
  std::vector<double> isolated_pmf;
  double isolated_mean = 0;
  double isolated_mean_se = 0;
  std::vector<FactorialMoment> factorial_moments;
  double poisson_tv_distance = 0;
  double exp_minus_lambda = 0;

  double wall_seconds = 0;
  double trials_per_second = 0;
  unsigned workers = 1;
};

/// Retention probability such that sum_v q^{deg v} = lambda, by bisection on q.
ThresholdSolution solve_explicit_threshold(const ExplicitGraph& g, double lambda);

/// Threshold for any view: the degree polynomial for powers, bisection otherwise.
ThresholdSolution solve_view_threshold(const GraphView& g, double lambda);

/// Runs cfg.trials independent percolation trials and aggregates them. The
/// report is a pure function of the config; cfg.workers only affects timing.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Sample means of the falling factorials X(X-1)...(X-r+1), r = 1..r_max, with
/// standard errors. Throws EmptySample.
std::vector<FactorialMoment> factorial_moments(std::span<const std::uint64_t> samples, int r_max);

/// Same from a histogram: counts[x] observations of value x.
std::vector<FactorialMoment> factorial_moments_from_counts(std::span<const std::uint64_t> counts,
                                                           int r_max);

/// Factorial moments of a probability vector over 0..size-1.
std::vector<double> factorial_moments_from_pmf(std::span<const double> pmf, int r_max);

/// Total variation distance between pmf (over 0..size-1) and Poisson(lambda);
/// Poisson mass beyond the support of pmf counts in full.
double poisson_tv_distance(std::span<const double> pmf, double lambda);

/// Wilson score interval at the given two-sided confidence.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence = 0.95);

/// Wilson half-width at one standard normal deviation.
double wilson_sigma(std::uint64_t successes, std::uint64_t trials);

/// One report per n, all sharing lambda, trial count, seed and moment order.
std::vector<ExperimentReport> convergence_sweep(const BaseGraph& base, double lambda,
                                                std::span<const int> n_values,
                                                std::uint64_t trials, std::uint64_t master_seed,
                                                int r_max = 4, unsigned workers = 1);

}  // namespace percolab

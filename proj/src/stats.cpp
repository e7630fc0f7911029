#include "percolab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "percolab/errors.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

ThresholdSolution solve_explicit_threshold(const ExplicitGraph& g, double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    throw TargetOutOfRange("lambda must be a positive finite number");
  }
  const double order = static_cast<double>(g.order());
  const double floor_value = g.expected_isolated(0.0);  // number of degree-0 vertices
  if (!(lambda < order) || !(lambda > floor_value)) {
    throw TargetOutOfRange("lambda must lie strictly between the isolated-vertex count at q=0 (" +
                           std::to_string(floor_value) + ") and the order (" +
                           std::to_string(order) + ")");
  }
  const double tolerance = kThresholdTolerance * std::max(1.0, lambda);
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 1; it <= kThresholdIterationCap; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = g.expected_isolated(mid) - lambda;
    if (std::abs(f) <= tolerance || mid == lo || mid == hi) {
      ThresholdSolution sol;
      sol.q = mid;
      sol.p = 1.0 - mid;
      sol.target = lambda;
      sol.residual = std::abs(f);
      sol.iterations = it;
      return sol;
    }
    (f < 0 ? lo : hi) = mid;
  }
  throw NonConvergence("explicit threshold bisection did not converge");
}

ThresholdSolution solve_view_threshold(const GraphView& g, double lambda) {
  if (const auto* power = g.as_power()) {
    return solve_threshold(degree_polynomial(power->base()), lambda, power->n());
  }
  return solve_explicit_threshold(*g.as_explicit(), lambda);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence) {
  if (trials == 0 || successes > trials) throw InvalidArgument("wilson_interval needs 0 <= x <= n, n >= 1");
  if (!(confidence > 0 && confidence < 1)) throw InvalidArgument("confidence must lie in (0, 1)");
  const double z =
      boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * confidence);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

double wilson_sigma(std::uint64_t successes, std::uint64_t trials) {
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  return 1.0 / (1.0 + 1.0 / n) * std::sqrt(phat * (1 - phat) / n + 1.0 / (4 * n * n));
}

std::vector<FactorialMoment> factorial_moments_from_counts(std::span<const std::uint64_t> counts,
                                                           int r_max) {
  if (r_max < 1) throw InvalidArgument("r_max must be at least 1");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw EmptySample("factorial moments of an empty sample");
  const double n = static_cast<double>(total);
  std::vector<FactorialMoment> out;
  for (int r = 1; r <= r_max; ++r) {
    double sum = 0;
    double sum_sq = 0;
    for (std::size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] == 0) continue;
      double ff = 1;
      for (int i = 0; i < r; ++i) ff *= static_cast<double>(x) - i;
      sum += ff * static_cast<double>(counts[x]);
      sum_sq += ff * ff * static_cast<double>(counts[x]);
    }
    const double mean = sum / n;
    double se = 0;
    if (total > 1) {
      const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
      se = std::sqrt(var / n);
    }
    out.push_back({r, mean, se});
  }
  return out;
}

std::vector<FactorialMoment> factorial_moments(std::span<const std::uint64_t> samples, int r_max) {
  if (samples.empty()) throw EmptySample("factorial moments of an empty sample");
  const auto max_x = *std::max_element(samples.begin(), samples.end());
  std::vector<std::uint64_t> counts(max_x + 1, 0);
  for (auto x : samples) ++counts[x];
  return factorial_moments_from_counts(counts, r_max);
}

std::vector<double> factorial_moments_from_pmf(std::span<const double> pmf, int r_max) {
  if (r_max < 1) throw InvalidArgument("r_max must be at least 1");
  if (pmf.empty()) throw EmptySample("empty pmf");
  std::vector<double> out;
  for (int r = 1; r <= r_max; ++r) {
    double sum = 0;
    for (std::size_t x = 0; x < pmf.size(); ++x) {
      double ff = 1;
      for (int i = 0; i < r; ++i) ff *= static_cast<double>(x) - i;
      sum += ff * pmf[x];
    }
    out.push_back(sum);
  }
  return out;
}

double poisson_tv_distance(std::span<const double> pmf, double lambda) {
  if (!(lambda > 0)) throw InvalidArgument("lambda must be positive");
  double diff = 0;
  double covered = 0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    const double xd = static_cast<double>(x);
    const double poisson = std::exp(xd * std::log(lambda) - lambda - std::lgamma(xd + 1));
    covered += poisson;
    diff += std::abs(pmf[x] - poisson);
  }
  return std::clamp(0.5 * (diff + std::max(0.0, 1.0 - covered)), 0.0, 1.0);
}

namespace {

struct TrialRecord {
  std::uint64_t isolated = 0;
  bool connected = false;
  bool middle = false;
};

ProportionEstimate proportion(std::uint64_t successes, std::uint64_t trials) {
  auto [lo, hi] = wilson_interval(successes, trials);
  return {successes, trials, static_cast<double>(successes) / static_cast<double>(trials), lo, hi};
}

GraphSummary summarize_graph(const GraphView& g) {
  GraphSummary s;
  s.order = g.order();
  s.size = g.size();
  if (const auto* power = g.as_power()) {
    s.kind = "power";
    s.k = power->k();
    s.n = power->n();
  } else {
    s.kind = "explicit";
  }
  return s;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.lambda.has_value() == cfg.p.has_value()) {
    throw InvalidArgument("exactly one of lambda and p must be given");
  }
  if (cfg.trials < 1) throw InvalidArgument("trials must be at least 1");
  if (cfg.workers < 1) throw InvalidArgument("workers must be at least 1");
  if (cfg.r_max < 1) throw InvalidArgument("r_max must be at least 1");
  if (cfg.graph.order() < 2) throw InvalidArgument("graph needs at least 2 vertices");

  ExperimentReport rep;
  rep.graph = summarize_graph(cfg.graph);
  if (cfg.lambda) {
    const auto sol = solve_view_threshold(cfg.graph, *cfg.lambda);
    rep.p = sol.p;
    rep.q = sol.q;
    rep.lambda = *cfg.lambda;
    rep.lambda_given = true;
  } else {
    if (!(*cfg.p > 0 && *cfg.p < 1)) throw InvalidArgument("p must lie in (0, 1)");
    rep.p = *cfg.p;
    rep.q = 1.0 - *cfg.p;
  }
  rep.expected_isolated = cfg.graph.expected_isolated(rep.q);
  if (!rep.lambda_given) rep.lambda = rep.expected_isolated;
  rep.trials = cfg.trials;
  rep.master_seed = cfg.master_seed;
  rep.workers = cfg.workers;

  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t chunk = 16;
  auto work = [&] {
    TrialScratch scratch;
    for (;;) {
      const std::uint64_t begin = next.fetch_add(chunk);
      if (begin >= cfg.trials) return;
      const std::uint64_t end = std::min(cfg.trials, begin + chunk);
      for (std::uint64_t t = begin; t < end; ++t) {
        const TrialPlan plan{cfg.master_seed, t, rep.p, Retention::sampled};
        const auto outcome = run_trial(cfg.graph, plan, scratch);
        records[t] = {outcome.isolated_count, outcome.connected,
                      outcome.census.has_middle_component()};
      }
    }
  };
  if (cfg.workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
  }
  const auto stop = std::chrono::steady_clock::now();

  std::uint64_t connected = 0;
  std::uint64_t middle = 0;
  std::uint64_t max_isolated = 0;
  for (const auto& r : records) {
    connected += r.connected;
    middle += r.middle;
    max_isolated = std::max(max_isolated, r.isolated);
  }
  std::vector<std::uint64_t> counts(max_isolated + 1, 0);
  for (const auto& r : records) ++counts[r.isolated];

  rep.connected = proportion(connected, cfg.trials);
  rep.no_isolated = proportion(counts[0], cfg.trials);
  rep.middle_component = proportion(middle, cfg.trials);
  rep.isolated_pmf.resize(counts.size());
  for (std::size_t x = 0; x < counts.size(); ++x) {
    rep.isolated_pmf[x] = static_cast<double>(counts[x]) / static_cast<double>(cfg.trials);
  }
  rep.factorial_moments = factorial_moments_from_counts(counts, cfg.r_max);
  rep.isolated_mean = rep.factorial_moments.front().estimate;
  rep.isolated_mean_se = rep.factorial_moments.front().standard_error;
  rep.poisson_tv_distance = poisson_tv_distance(rep.isolated_pmf, rep.lambda);
  rep.exp_minus_lambda = std::exp(-rep.lambda);

  rep.wall_seconds = std::chrono::duration<double>(stop - start).count();
  rep.trials_per_second =
      rep.wall_seconds > 0 ? static_cast<double>(cfg.trials) / rep.wall_seconds : 0.0;
  return rep;
}

std::vector<ExperimentReport> convergence_sweep(const BaseGraph& base, double lambda,
                                                std::span<const int> n_values,
                                                std::uint64_t trials, std::uint64_t master_seed,
                                                int r_max, unsigned workers) {
  std::vector<ExperimentReport> table;
  table.reserve(n_values.size());
  for (int n : n_values) {
    ExperimentConfig cfg{GraphView(PowerGraph(base, n))};
    cfg.lambda = lambda;
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.r_max = r_max;
    cfg.workers = workers;
    table.push_back(run_experiment(cfg));
  }
  return table;
}

}  // namespace percolab

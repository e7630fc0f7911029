#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "percolab/power_graph.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

/// Component-size histogram of one percolated graph. Singletons are not
/// listed here; they are the isolated vertices.
struct ComponentCensus {
  /// (size, count) for component sizes in [2, order/2], ascending by size.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> middle;
  /// Components with more than order/2 vertices (at most one).
  std::uint64_t large_components = 0;
  std::uint64_t large_vertices = 0;

  bool has_middle_component() const noexcept { return !middle.empty(); }
  friend bool operator==(const ComponentCensus&, const ComponentCensus&) = default;
};

struct TrialOutcome {
  bool connected = false;
  std::uint64_t isolated_count = 0;
  ComponentCensus census;
  std::uint64_t retained_edges = 0;
  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

enum class Retention {
  sampled,  // each edge kept with probability p
  all,      // test hook: keep every edge
  none,     // test hook: drop every edge
};

struct TrialPlan {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
  double p = 0.5;
  Retention retention = Retention::sampled;
};

/// Whether edge `edge_index` survives in the trial described by `plan`.
bool edge_retained(const TrialPlan& plan, std::uint64_t edge_index);

/// Reusable per-worker memory for run_trial.
struct TrialScratch {
  UnionFind components;
  std::vector<std::uint64_t> retained_bits;
  std::vector<std::uint64_t> middle_sizes;
};

/// Percolates g under `plan` and summarizes the surviving components. With
/// workers > 1 the edge decisions are drawn by disjoint index ranges in
/// parallel; the outcome does not depend on the worker count. Throws
/// OutOfRange for graphs with 2^32 or more vertices.
TrialOutcome run_trial(const GraphView& g, const TrialPlan& plan, TrialScratch& scratch,
                       unsigned workers = 1);
TrialOutcome run_trial(const GraphView& g, const TrialPlan& plan, unsigned workers = 1);

inline constexpr std::uint64_t kExactEdgeCap = 26;

/// Sum over all edge subsets E' of p^|E'| (1-p)^(m-|E'|) [(V, E') connected].
/// Throws TooManyEdges when m > 26.
double exact_connectivity_probability(const GraphView& g, double p);

/// Exact law of the isolated-vertex count: element x is P[X = x], x = 0..order.
std::vector<double> exact_isolated_distribution(const GraphView& g, double p);

struct ExactSummary {
  double connected = 0;
  std::vector<double> isolated_distribution;
};

/// Both exact quantities from a single enumeration.
ExactSummary exact_percolation(const GraphView& g, double p);

}  // namespace percolab

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "percolab/graph_core.hpp"
#include "percolab/power_graph.hpp"

namespace percolab {

/// Edges with exactly one endpoint in S. Throws InvalidSet unless S is a
/// nonempty proper subset of distinct in-range vertices.
std::uint64_t boundary_of_set(const GraphView& g, std::span<const VertexCode> set);

enum class BoundaryMethod { exhaustive, branch_and_bound };

const char* to_string(BoundaryMethod m) noexcept;

struct MinBoundaryOptions {
  /// Largest C(order, s) enumerated exhaustively; above it, branch-and-bound.
  std::uint64_t enumeration_budget = 50'000'000;
  /// Search-node cap for branch-and-bound.
  std::uint64_t node_budget = 200'000'000;
  unsigned workers = 1;
};

struct MinBoundaryResult {
  std::uint64_t value = 0;
  BoundaryMethod method = BoundaryMethod::exhaustive;
  std::vector<Vertex> witness;  // a minimizing set
};

/// b(s) = min over |S| = s of boundary_of_set. Requires 1 <= s <= order/2.
/// Throws BudgetExceeded (carrying the incumbent) when the search is too large.
MinBoundaryResult min_boundary(const GraphView& g, std::uint64_t s,
                               const MinBoundaryOptions& options = {});
MinBoundaryResult min_boundary(const SimpleGraph& g, std::uint64_t s,
                               const MinBoundaryOptions& options = {});

struct IsoperimetricProfile {
  std::string graph_id;
  /// values[i] = b(i + 1).
  std::vector<std::uint64_t> values;
  BoundaryMethod method = BoundaryMethod::exhaustive;  // branch_and_bound if any entry used it

  std::uint64_t at(std::uint64_t s) const { return values.at(s - 1); }
};

/// b(s) for s = 1..s_max (default order/2).
IsoperimetricProfile isoperimetric_profile(const GraphView& g, std::string graph_id = {},
                                           std::optional<std::uint64_t> s_max = std::nullopt,
                                           const MinBoundaryOptions& options = {});

struct BasicConditionsParams {
  double epsilon_prime = 0.5;
  double c = 1;
  double epsilon = 1;
};

struct ConditionVerdict {
  int condition = 0;
  bool pass = false;
  double lhs = 0;
  double rhs = 0;
  std::string detail;
  std::optional<VertexCode> witness_vertex;
  std::optional<std::uint64_t> witness_s;
  std::optional<std::uint64_t> witness_boundary;
  /// Condition 5 only: every (s, b(s)) compared.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> checked;
};

struct ConditionsReport {
  int n = 0;
  std::uint32_t k = 0;
  std::array<ConditionVerdict, 5> conditions;
  bool all_pass() const noexcept;
};

/// Right-hand side of condition 5: epsilon * Delta * s * (1 - log_k(s) / n).
double condition5_rhs(double epsilon, std::uint32_t max_degree, std::uint64_t s, std::uint32_t k,
                      int n);

/// Checks the five structural conditions on a single member G_n of a family.
ConditionsReport check_basic_conditions_at(const GraphView& g, int n, std::uint32_t k,
                                           const BasicConditionsParams& params,
                                           const MinBoundaryOptions& options = {});

using GraphFamily = std::function<GraphView(int n)>;

std::vector<ConditionsReport> check_basic_conditions(const GraphFamily& family, std::uint32_t k,
                                                     const BasicConditionsParams& params,
                                                     std::span<const int> n_values,
                                                     const MinBoundaryOptions& options = {});

struct TillichEstimate {
  double constant = 0;
  int n_at = 0;  // where the minimum ratio occurred
  std::uint64_t s_at = 0;
};

/// min over tested n and 1 <= s < k^n of b(s) / (s (n - log_k s)).
TillichEstimate tillich_constant_estimate(const BaseGraph& base, std::span<const int> n_values,
                                          const MinBoundaryOptions& options = {});

struct DominatingSetResult {
  std::vector<VertexCode> set;    // U (randomized) or the l-dominating set
  std::vector<VertexCode> given;  // W, randomized construction only
  double bound = 0;
  bool verified = false;
  int attempts = 0;
};

inline constexpr int kDominationAttemptCap = 50;

/// Random construction U = U0 + U1 with sampling probability ln(delta+1)/(delta+1),
/// retried until |U| <= (1 + ln(delta+1)) / (delta+1) * (order - |W|).
/// Requires every vertex outside W to have degree >= delta.
DominatingSetResult randomized_dominating_set(const GraphView& g, std::span<const VertexCode> given,
                                              std::uint32_t delta, std::uint64_t seed = 0);

/// A set of at most order/(ell+1) vertices within distance ell of every vertex.
/// Throws ComponentTooSmall if some component has at most ell vertices.
DominatingSetResult ell_dominating_set(const GraphView& g, std::uint32_t ell);

/// N[set + given] = V.
bool dominates(const SimpleGraph& g, std::span<const VertexCode> set,
               std::span<const VertexCode> given = {});
/// Every vertex within distance ell of the set.
bool ell_dominates(const SimpleGraph& g, std::span<const VertexCode> set, std::uint32_t ell);

}  // namespace percolab

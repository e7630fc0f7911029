#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace percolab {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex count and edge list as read from an edge-list document, before any
/// structural validation.
struct EdgeList {
  std::uint64_t order = 0;
  std::vector<Edge> edges;
};

/// Parses the edge-list format: a "<k> <m>" header followed by m "<u> <v>"
/// lines. '#' starts a comment; blank lines are skipped; CRLF is accepted.
/// Throws ParseError on malformed text and InvalidGraph when an endpoint is
/// out of range. Loops and duplicates are left for SimpleGraph to reject.
EdgeList parse_edge_list(std::string_view text);

EdgeList read_edge_list_file(const std::string& path);

/// A validated simple undirected graph with CSR adjacency. Edges are stored
/// normalized (u < v) in lexicographic order; neighbor lists are ascending.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Throws InvalidGraph on loops, duplicate edges or out-of-range endpoints.
  static SimpleGraph from_edges(std::uint64_t order, std::span<const Edge> edges);
  static SimpleGraph from_edge_list(const EdgeList& list) {
    return from_edges(list.order, list.edges);
  }

  std::uint32_t order() const noexcept { return order_; }
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t min_degree() const noexcept { return min_degree_; }
  std::uint32_t max_degree() const noexcept { return max_degree_; }
  bool has_edge(Vertex a, Vertex b) const;

 private:
  std::uint32_t order_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::uint32_t min_degree_ = 0;
  std::uint32_t max_degree_ = 0;
};

/// True iff a traversal from vertex 0 reaches every vertex. A graph with no
/// vertices is not connected.
bool is_connected(const SimpleGraph& g);

/// The base graph H of a Cartesian power: simple, connected, k >= 2.
class BaseGraph {
 public:
  /// Throws InvalidGraph for k < 2 and Disconnected if H is not connected.
  explicit BaseGraph(SimpleGraph graph);

  std::uint32_t k() const noexcept { return graph_.order(); }
  std::size_t edge_count() const noexcept { return graph_.size(); }
  const SimpleGraph& graph() const noexcept { return graph_; }
  std::span<const Edge> edges() const noexcept { return graph_.edges(); }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return graph_.neighbors(v); }
  std::uint32_t degree(Vertex v) const noexcept { return graph_.degree(v); }
  std::uint32_t min_degree() const noexcept { return graph_.min_degree(); }
  std::uint32_t max_degree() const noexcept { return graph_.max_degree(); }

 private:
  SimpleGraph graph_;
};

bool is_connected(const BaseGraph& g);

/// Parses and validates a base graph. Throws ParseError, InvalidGraph or
/// Disconnected.
BaseGraph parse_graph(std::string_view text);
BaseGraph read_base_graph_file(const std::string& path);

/// P(H, x) = sum_i alpha_i x^i where alpha_i counts the vertices of degree i.
class DegreePolynomial {
 public:
  DegreePolynomial() = default;
  explicit DegreePolynomial(std::map<std::uint32_t, std::uint64_t> coefficients);

  const std::map<std::uint32_t, std::uint64_t>& coefficients() const noexcept {
    return coefficients_;
  }
  /// alpha_i, zero for absent degrees.
  std::uint64_t coefficient(std::uint32_t degree) const;
  /// P(H, 1): the number of vertices.
  std::uint64_t vertex_count() const noexcept { return vertex_count_; }

  double operator()(double x) const;
  double derivative(double x) const;

 private:
  std::map<std::uint32_t, std::uint64_t> coefficients_;
  std::uint64_t vertex_count_ = 0;
};

DegreePolynomial degree_polynomial(const BaseGraph& g);
double eval_polynomial(const DegreePolynomial& poly, double x);

struct ThresholdSolution {
  double q = 0;          // per-edge deletion probability, P(H, q) = target
  double p = 0;          // retention probability 1 - q
  double target = 0;     // lambda_n^(1/n)
  double residual = 0;   // |P(H, q) - target|
  int iterations = 0;
};

inline constexpr double kThresholdTolerance = 1e-12;
inline constexpr int kThresholdIterationCap = 200;

/// Solves P(H, q) = lambda_n^(1/n) for q in (0, 1) with a safeguarded Newton
/// iteration inside a shrinking bisection bracket. Throws TargetOutOfRange when
/// lambda_n^(1/n) >= k (or lambda_n <= 0) and NonConvergence at the iteration cap.
ThresholdSolution solve_threshold(const DegreePolynomial& poly, double lambda_n, int n);

}  // namespace percolab

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "percolab/errors.hpp"
#include "percolab/graph_core.hpp"

namespace percolab {

/// Vertex code of a power graph: sum_j digit_j * k^j, so coordinate 1 is the
/// least significant digit.
using VertexCode = std::uint64_t;

inline constexpr std::uint64_t kMaxPowerOrder = std::uint64_t{1} << 40;

/// The n-th Cartesian power H^n, represented implicitly. Adjacency is never
/// materialized; neighbors and edges are generated from the base graph.
class PowerGraph {
 public:
  /// Throws OutOfRange when n < 1 or k^n exceeds kMaxPowerOrder.
  PowerGraph(BaseGraph base, int n);

  const BaseGraph& base() const noexcept { return base_; }
  int n() const noexcept { return n_; }
  std::uint32_t k() const noexcept { return base_.k(); }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t size() const noexcept { return size_; }
  /// k^j for j = 0..n.
  std::uint64_t place_value(int j) const noexcept { return place_[static_cast<std::size_t>(j)]; }

  VertexCode encode(std::span<const Vertex> digits) const;
  std::vector<Vertex> decode(VertexCode code) const;

  std::uint32_t degree(VertexCode v) const;
  std::vector<VertexCode> neighbors(VertexCode v) const;
  std::uint32_t min_degree() const noexcept { return static_cast<std::uint32_t>(n_) * base_.min_degree(); }
  std::uint32_t max_degree() const noexcept { return static_cast<std::uint32_t>(n_) * base_.max_degree(); }

  /// (sum_u q^{d_H(u)})^n.
  double expected_isolated(double q) const;

  /// Calls f(index, u, w) for every edge with index in [begin, end). Edges are
  /// ordered by coordinate j, then base edge (a < b, lexicographic), then the
  /// remaining digits in ascending code order; u carries digit a, w digit b.
  template <class F>
  void for_each_edge(std::uint64_t begin, std::uint64_t end, F&& f) const;

  /// Covers the whole edge stream with arithmetic runs: f(index, u, w, len, step)
  /// stands for edges index + t, t < len, with endpoints u + t*step, w + t*step.
  template <class F>
  void for_each_run(F&& f) const;

 private:
  BaseGraph base_;
  int n_;
  std::uint64_t order_ = 1;
  std::uint64_t size_ = 0;
  std::uint64_t free_assignments_ = 1;  // k^(n-1)
  std::vector<std::uint64_t> place_;
  std::vector<std::uint32_t> base_degree_;
};

/// A user-supplied sparse graph G_n. Same validation as SimpleGraph: simple
/// and loop-free, connectivity not required.
class ExplicitGraph {
 public:
  explicit ExplicitGraph(SimpleGraph graph) : graph_(std::move(graph)) {}

  const SimpleGraph& graph() const noexcept { return graph_; }
  std::uint64_t order() const noexcept { return graph_.order(); }
  std::uint64_t size() const noexcept { return graph_.size(); }
  std::uint32_t degree(Vertex v) const noexcept { return graph_.degree(v); }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return graph_.neighbors(v); }
  std::uint32_t min_degree() const noexcept { return graph_.min_degree(); }
  std::uint32_t max_degree() const noexcept { return graph_.max_degree(); }

  /// sum_v q^{deg v}.
  double expected_isolated(double q) const;

  /// Edges in the lexicographic (u < v) order of SimpleGraph::edges().
  template <class F>
  void for_each_edge(std::uint64_t begin, std::uint64_t end, F&& f) const {
    const auto edges = graph_.edges();
    end = std::min<std::uint64_t>(end, edges.size());
    for (std::uint64_t i = begin; i < end; ++i) f(i, VertexCode{edges[i].u}, VertexCode{edges[i].v});
  }

 private:
  SimpleGraph graph_;
};

ExplicitGraph read_explicit_graph_file(const std::string& path);

/// Uniform read-only view over a PowerGraph or an ExplicitGraph. Cheap to copy;
/// the underlying graph is shared and immutable.
class GraphView {
 public:
  GraphView(PowerGraph g) : graph_(std::make_shared<const PowerGraph>(std::move(g))) {}
  GraphView(ExplicitGraph g) : graph_(std::make_shared<const ExplicitGraph>(std::move(g))) {}

  const PowerGraph* as_power() const noexcept {
    auto p = std::get_if<std::shared_ptr<const PowerGraph>>(&graph_);
    return p ? p->get() : nullptr;
  }
  const ExplicitGraph* as_explicit() const noexcept {
    auto p = std::get_if<std::shared_ptr<const ExplicitGraph>>(&graph_);
    return p ? p->get() : nullptr;
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit([&](const auto& ptr) -> decltype(auto) { return f(*ptr); }, graph_);
  }

  std::uint64_t order() const {
    return visit([](const auto& g) { return g.order(); });
  }
  std::uint64_t size() const {
    return visit([](const auto& g) { return g.size(); });
  }
  std::uint32_t min_degree() const {
    return visit([](const auto& g) { return g.min_degree(); });
  }
  std::uint32_t max_degree() const {
    return visit([](const auto& g) { return g.max_degree(); });
  }
  std::uint32_t degree(VertexCode v) const;
  std::vector<VertexCode> neighbors(VertexCode v) const;
  double expected_isolated(double q) const {
    return visit([q](const auto& g) { return g.expected_isolated(q); });
  }

  /// f(index, u, w) for edges with index in [begin, end).
  template <class F>
  void for_each_edge(std::uint64_t begin, std::uint64_t end, F&& f) const {
    visit([&](const auto& g) { g.for_each_edge(begin, end, f); });
  }
  template <class F>
  void for_each_edge(F&& f) const {
    for_each_edge(0, size(), std::forward<F>(f));
  }

 private:
  std::variant<std::shared_ptr<const PowerGraph>, std::shared_ptr<const ExplicitGraph>> graph_;
};

/// The full edge sequence of g, in stream order.
std::vector<Edge> edge_stream(const GraphView& g);

/// Materializes the view as an explicit simple graph. Throws OutOfRange if the
/// order does not fit a 32-bit vertex id.
SimpleGraph materialize(const GraphView& g);

template <class F>
void PowerGraph::for_each_edge(std::uint64_t begin, std::uint64_t end, F&& f) const {
  end = std::min(end, size_);
  if (begin >= end) return;
  const auto base_edges = base_.edges();
  const std::uint64_t m = base_edges.size();
  const std::uint64_t block = free_assignments_;
  std::uint64_t index = begin;
  while (index < end) {
    const std::uint64_t block_id = index / block;
    const int j = static_cast<int>(block_id / m);
    const Edge& e = base_edges[block_id % m];
    const std::uint64_t stride = place_[static_cast<std::size_t>(j)];
    const std::uint64_t upper = stride * k();
    const std::uint64_t offset_a = e.u * stride;
    const std::uint64_t offset_b = e.v * stride;
    std::uint64_t r = index - block_id * block;
    const std::uint64_t r_end = std::min(block, end - block_id * block);
    std::uint64_t low = r % stride;
    std::uint64_t high = (r / stride) * upper;
    while (r < r_end) {
      const std::uint64_t run = std::min(stride - low, r_end - r);
      const std::uint64_t code = high + low;
      for (std::uint64_t t = 0; t < run; ++t) {
        f(index + t, code + t + offset_a, code + t + offset_b);
      }
      index += run;
      r += run;
      low = 0;
      high += upper;
    }
  }
}

template <class F>
void PowerGraph::for_each_run(F&& f) const {
  const auto base_edges = base_.edges();
  const std::uint64_t block = free_assignments_;
  std::uint64_t index = 0;
  for (int j = 0; j < n_; ++j) {
    const std::uint64_t stride = place_[static_cast<std::size_t>(j)];
    const std::uint64_t upper = stride * k();
    for (const Edge& e : base_edges) {
      const std::uint64_t offset_a = e.u * stride;
      const std::uint64_t offset_b = e.v * stride;
      if (stride == 1) {
        f(index, offset_a, offset_b, block, std::uint64_t{k()});
        index += block;
        continue;
      }
      for (std::uint64_t high = 0; high < block / stride * upper; high += upper) {
        f(index, high + offset_a, high + offset_b, stride, std::uint64_t{1});
        index += stride;
      }
    }
  }
}

}  // namespace percolab

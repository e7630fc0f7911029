#include "percolab/power_graph.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace percolab {

PowerGraph::PowerGraph(BaseGraph base, int n) : base_(std::move(base)), n_(n) {
  if (n < 1) throw OutOfRange("exponent n must be at least 1");
  const std::uint64_t k = base_.k();
  place_.reserve(static_cast<std::size_t>(n) + 1);
  place_.push_back(1);
  for (int j = 1; j <= n; ++j) {
    if (place_.back() > kMaxPowerOrder / k) {
      throw OutOfRange(std::to_string(k) + "^" + std::to_string(n) +
                       " vertices exceeds the 2^40 power-graph cap");
    }
    place_.push_back(place_.back() * k);
  }
  order_ = place_.back();
  free_assignments_ = place_[static_cast<std::size_t>(n) - 1];
  size_ = static_cast<std::uint64_t>(n) * base_.edge_count() * free_assignments_;
  base_degree_.resize(k);
  for (Vertex v = 0; v < k; ++v) base_degree_[v] = base_.degree(v);
}

VertexCode PowerGraph::encode(std::span<const Vertex> digits) const {
  if (digits.size() != static_cast<std::size_t>(n_)) {
    throw OutOfRange("expected " + std::to_string(n_) + " digits");
  }
  VertexCode code = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] >= k()) throw OutOfRange("digit out of range");
    code += digits[j] * place_[j];
  }
  return code;
}

std::vector<Vertex> PowerGraph::decode(VertexCode code) const {
  if (code >= order_) throw OutOfRange("vertex code out of range");
  std::vector<Vertex> digits(static_cast<std::size_t>(n_));
  for (auto& d : digits) {
    d = static_cast<Vertex>(code % k());
    code /= k();
  }
  return digits;
}

std::uint32_t PowerGraph::degree(VertexCode v) const {
  if (v >= order_) throw OutOfRange("vertex code out of range");
  std::uint32_t sum = 0;
  for (int j = 0; j < n_; ++j) {
    sum += base_degree_[v % k()];
    v /= k();
  }
  return sum;
}

std::vector<VertexCode> PowerGraph::neighbors(VertexCode v) const {
  const auto digits = decode(v);
  std::vector<VertexCode> out;
  out.reserve(degree(v));
  for (std::size_t j = 0; j < digits.size(); ++j) {
    const VertexCode cleared = v - digits[j] * place_[j];
    for (Vertex w : base_.neighbors(digits[j])) out.push_back(cleared + w * place_[j]);
  }
  return out;
}

double PowerGraph::expected_isolated(double q) const {
  double per_coordinate = 0;
  for (auto d : base_degree_) per_coordinate += std::pow(q, static_cast<double>(d));
  return std::pow(per_coordinate, static_cast<double>(n_));
}

double ExplicitGraph::expected_isolated(double q) const {
  double sum = 0;
  for (Vertex v = 0; v < graph_.order(); ++v) sum += std::pow(q, static_cast<double>(degree(v)));
  return sum;
}

ExplicitGraph read_explicit_graph_file(const std::string& path) {
  return ExplicitGraph(SimpleGraph::from_edge_list(read_edge_list_file(path)));
}

std::uint32_t GraphView::degree(VertexCode v) const {
  if (auto p = as_power()) return p->degree(v);
  const auto* g = as_explicit();
  if (v >= g->order()) throw OutOfRange("vertex out of range");
  return g->degree(static_cast<Vertex>(v));
}

std::vector<VertexCode> GraphView::neighbors(VertexCode v) const {
  if (auto p = as_power()) return p->neighbors(v);
  const auto* g = as_explicit();
  if (v >= g->order()) throw OutOfRange("vertex out of range");
  auto nb = g->neighbors(static_cast<Vertex>(v));
  return {nb.begin(), nb.end()};
}

std::vector<Edge> edge_stream(const GraphView& g) {
  if (g.order() > std::numeric_limits<Vertex>::max()) {
    throw OutOfRange("graph too large to materialize its edge stream");
  }
  std::vector<Edge> out;
  out.reserve(g.size());
  g.for_each_edge([&](std::uint64_t, VertexCode u, VertexCode w) {
    out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(w)});
  });
  return out;
}

SimpleGraph materialize(const GraphView& g) {
  if (auto e = g.as_explicit()) return e->graph();
  const auto edges = edge_stream(g);
  return SimpleGraph::from_edges(g.order(), edges);
}

}  // namespace percolab

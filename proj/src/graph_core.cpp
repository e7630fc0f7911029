#include "percolab/graph_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// Splits a content line into exactly two unsigned decimal fields.
std::pair<std::uint64_t, std::uint64_t> two_fields(std::string_view line, std::size_t line_no) {
  std::uint64_t values[2];
  std::size_t pos = 0;
  for (int i = 0; i < 2; ++i) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) throw ParseError(line_no, "expected two integers");
    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, values[i]);
    if (ec != std::errc{} || (ptr != end && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(line_no, "malformed integer in '" + std::string(line) + "'");
    }
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  if (!trim(line.substr(pos)).empty()) {
    throw ParseError(line_no, "trailing content in '" + std::string(line) + "'");
  }
  return {values[0], values[1]};
}

}  // namespace

EdgeList parse_edge_list(std::string_view text) {
  EdgeList out;
  bool have_header = false;
  std::uint64_t expected_edges = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto [a, b] = two_fields(line, line_no);
    if (!have_header) {
      if (a > std::numeric_limits<Vertex>::max()) {
        throw ParseError(line_no, "vertex count too large");
      }
      out.order = a;
      expected_edges = b;
      out.edges.reserve(std::min<std::uint64_t>(b, 1u << 20));
      have_header = true;
      continue;
    }
    if (a >= out.order || b >= out.order) {
      throw InvalidGraph("line " + std::to_string(line_no) + ": endpoint out of range");
    }
    out.edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (!have_header) throw ParseError(line_no, "missing '<k> <m>' header");
  if (out.edges.size() != expected_edges) {
    // Structural defects take precedence over a miscounted header.
    SimpleGraph::from_edges(out.order, out.edges);
    throw ParseError(line_no, "header declares " + std::to_string(expected_edges) +
                                  " edges, found " + std::to_string(out.edges.size()));
  }
  return out;
}

EdgeList read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str());
}

SimpleGraph SimpleGraph::from_edges(std::uint64_t order, std::span<const Edge> edges) {
  if (order > std::numeric_limits<Vertex>::max()) throw InvalidGraph("vertex count too large");
  SimpleGraph g;
  g.order_ = static_cast<std::uint32_t>(order);
  g.edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= order || e.v >= order) throw InvalidGraph("edge endpoint out of range");
    if (e.u == e.v) throw InvalidGraph("self-loop at vertex " + std::to_string(e.u));
    g.edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end()) {
    throw InvalidGraph("duplicate edge {" + std::to_string(dup->u) + ", " +
                       std::to_string(dup->v) + "}");
  }

  std::vector<std::size_t> degree(order, 0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(order + 1, 0);
  for (std::size_t v = 0; v < order; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[e.u]++] = e.v;
    g.adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < order; ++v) {
    std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
  }
  if (order > 0) {
    auto [lo, hi] = std::minmax_element(degree.begin(), degree.end());
    g.min_degree_ = static_cast<std::uint32_t>(*lo);
    g.max_degree_ = static_cast<std::uint32_t>(*hi);
  }
  return g;
}

bool SimpleGraph::has_edge(Vertex a, Vertex b) const {
  if (a >= order_ || b >= order_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool is_connected(const SimpleGraph& g) {
  if (g.order() == 0) return false;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.order();
}

BaseGraph::BaseGraph(SimpleGraph graph) : graph_(std::move(graph)) {
  if (graph_.order() < 2) throw InvalidGraph("base graph needs at least 2 vertices");
  if (!is_connected(graph_)) throw Disconnected("base graph is not connected");
}

bool is_connected(const BaseGraph& g) { return is_connected(g.graph()); }

BaseGraph parse_graph(std::string_view text) {
  return BaseGraph(SimpleGraph::from_edge_list(parse_edge_list(text)));
}

BaseGraph read_base_graph_file(const std::string& path) {
  return BaseGraph(SimpleGraph::from_edge_list(read_edge_list_file(path)));
}

DegreePolynomial::DegreePolynomial(std::map<std::uint32_t, std::uint64_t> coefficients)
    : coefficients_(std::move(coefficients)) {
  for (auto it = coefficients_.begin(); it != coefficients_.end();) {
    if (it->second == 0) {
      it = coefficients_.erase(it);
    } else {
      vertex_count_ += it->second;
      ++it;
    }
  }
}

std::uint64_t DegreePolynomial::coefficient(std::uint32_t degree) const {
  auto it = coefficients_.find(degree);
  return it == coefficients_.end() ? 0 : it->second;
}

double DegreePolynomial::operator()(double x) const {
  double sum = 0;
  for (auto [degree, count] : coefficients_) {
    sum += static_cast<double>(count) * std::pow(x, static_cast<double>(degree));
  }
  return sum;
}

double DegreePolynomial::derivative(double x) const {
  double sum = 0;
  for (auto [degree, count] : coefficients_) {
    if (degree == 0) continue;
    sum += static_cast<double>(count) * degree * std::pow(x, static_cast<double>(degree - 1));
  }
  return sum;
}

DegreePolynomial degree_polynomial(const BaseGraph& g) {
  std::map<std::uint32_t, std::uint64_t> coefficients;
  for (Vertex v = 0; v < g.k(); ++v) ++coefficients[g.degree(v)];
  return DegreePolynomial(std::move(coefficients));
}

double eval_polynomial(const DegreePolynomial& poly, double x) { return poly(x); }

ThresholdSolution solve_threshold(const DegreePolynomial& poly, double lambda_n, int n) {
  if (n < 1) throw InvalidArgument("exponent n must be positive");
  if (!(lambda_n > 0) || !std::isfinite(lambda_n)) {
    throw TargetOutOfRange("lambda_n must be a positive finite number");
  }
  const double target = std::exp(std::log(lambda_n) / n);
  const double k = static_cast<double>(poly.vertex_count());
  if (!(target < k)) {
    throw TargetOutOfRange("lambda_n^(1/n) = " + std::to_string(target) +
                           " is not below P(H,1) = " + std::to_string(k));
  }
  if (poly.coefficient(0) > 0 && !(target > static_cast<double>(poly.coefficient(0)))) {
    throw TargetOutOfRange("target not above P(H,0)");
  }

  // P is increasing on [0, 1] with P(0) < target < P(1): keep a sign bracket
  // and accept Newton steps only while they stay strictly inside it.
  double lo = 0.0;
  double hi = 1.0;
  double x = 0.5;
  ThresholdSolution sol;
  sol.target = target;
  for (int it = 1; it <= kThresholdIterationCap; ++it) {
    const double f = poly(x) - target;
    if (std::abs(f) <= kThresholdTolerance) {
      sol.q = x;
      sol.p = 1.0 - x;
      sol.residual = std::abs(f);
      sol.iterations = it;
      return sol;
    }
    if (f < 0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = poly.derivative(x);
    double next = slope > 0 ? x - f / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  throw NonConvergence("threshold solver did not reach tolerance");
}

}  // namespace percolab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "percolab/errors.hpp"
#include "percolab/power_graph.hpp"
#include "support/oracles.hpp"

using namespace percolab;

namespace {

PowerGraph power_of(std::size_t k, const std::vector<Edge>& edges, int n) {
  return PowerGraph(oracle::base(k, edges), n);
}

std::set<std::pair<std::uint64_t, std::uint64_t>> streamed(const PowerGraph& g) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  g.for_each_edge(0, g.size(), [&](std::uint64_t, VertexCode u, VertexCode w) {
    out.insert({std::min(u, w), std::max(u, w)});
  });
  return out;
}

}  // namespace

TEST_CASE("encode and decode on K_3^2") {
  const auto g = power_of(3, oracle::complete_edges(3), 2);
  const std::vector<Vertex> d{2, 1};
  CHECK(g.encode(d) == 5);
  CHECK(g.decode(5) == d);
  CHECK(g.decode(0) == std::vector<Vertex>{0, 0});
  CHECK(g.decode(8) == std::vector<Vertex>{2, 2});
  CHECK_THROWS_AS(g.decode(9), OutOfRange);
  const std::vector<Vertex> bad{3, 0};
  CHECK_THROWS_AS(g.encode(bad), OutOfRange);
  const std::vector<Vertex> short_tuple{1};
  CHECK_THROWS_AS(g.encode(short_tuple), OutOfRange);
}

TEST_CASE("encode/decode round trip over all of P_3^4") {
  const auto g = power_of(3, oracle::path_edges(3), 4);
  REQUIRE(g.order() == 81);
  for (VertexCode v = 0; v < g.order(); ++v) CHECK(g.encode(g.decode(v)) == v);
}

TEST_CASE("power graph sizes") {
  CHECK(power_of(2, oracle::path_edges(2), 3).size() == 12);
  CHECK(power_of(3, oracle::path_edges(3), 2).size() == 12);
  CHECK(power_of(3, oracle::complete_edges(3), 1).size() == 3);
  CHECK(power_of(2, oracle::path_edges(2), 16).size() == 524288);
  CHECK(power_of(2, oracle::path_edges(2), 16).order() == 65536);
}

TEST_CASE("construction limits") {
  const auto k2 = oracle::base(2, oracle::path_edges(2));
  CHECK_THROWS_AS(PowerGraph(k2, 0), OutOfRange);
  CHECK_NOTHROW(PowerGraph(k2, 40));
  CHECK_THROWS_AS(PowerGraph(k2, 41), OutOfRange);
  const auto k3 = oracle::base(3, oracle::complete_edges(3));
  CHECK_THROWS_AS(PowerGraph(k3, 26), OutOfRange);
}

TEST_CASE("degrees and neighbors of the hypercube Q_3") {
  const auto g = power_of(2, oracle::path_edges(2), 3);
  CHECK(g.min_degree() == 3);
  CHECK(g.max_degree() == 3);
  for (VertexCode v = 0; v < 8; ++v) {
    CHECK(g.degree(v) == 3);
    auto nb = g.neighbors(v);
    std::sort(nb.begin(), nb.end());
    std::vector<VertexCode> expected{v ^ 1u, v ^ 2u, v ^ 4u};
    std::sort(expected.begin(), expected.end());
    CHECK(nb == expected);
  }
}

TEST_CASE("degree in a power is the sum of base degrees of the digits") {
  const auto g = power_of(3, oracle::path_edges(3), 3);
  for (VertexCode v = 0; v < g.order(); ++v) {
    std::uint32_t d = 0;
    for (Vertex digit : g.decode(v)) d += digit == 1 ? 2 : 1;
    CHECK(g.degree(v) == d);
    CHECK(g.neighbors(v).size() == d);
  }
  CHECK(g.min_degree() == 3);
  CHECK(g.max_degree() == 6);
}

TEST_CASE("edge stream order for P_3^2") {
  const auto g = power_of(3, oracle::path_edges(3), 2);
  std::vector<std::pair<VertexCode, VertexCode>> seen;
  std::vector<std::uint64_t> indices;
  g.for_each_edge(0, g.size(), [&](std::uint64_t i, VertexCode u, VertexCode w) {
    indices.push_back(i);
    seen.push_back({u, w});
  });
  // Coordinate 1 first: base edge {0,1} with the other digit 0, 1, 2.
  const std::vector<std::pair<VertexCode, VertexCode>> expected{
      {0, 1}, {3, 4}, {6, 7}, {1, 2}, {4, 5}, {7, 8},
      {0, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}, {5, 8}};
  CHECK(seen == expected);
  for (std::size_t i = 0; i < indices.size(); ++i) CHECK(indices[i] == i);

  std::vector<std::pair<VertexCode, VertexCode>> middle;
  g.for_each_edge(4, 9, [&](std::uint64_t, VertexCode u, VertexCode w) { middle.push_back({u, w}); });
  CHECK(middle == std::vector<std::pair<VertexCode, VertexCode>>(expected.begin() + 4, expected.begin() + 9));
}

TEST_CASE("property: streamed edges equal the definition for random bases") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 2 + rng() % 5;
    const auto edges = oracle::random_connected_edges(k, rng() % 4, rng());
    int n = 1;
    while (n < 6 && std::pow(double(k), n + 1) <= 4096) ++n;
    n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const auto g = power_of(k, edges, n);
    const auto streamed_edges = streamed(g);
    CHECK(streamed_edges.size() == g.size());
    CHECK(streamed_edges == oracle::brute_power_edges(k, edges, n));

    // Handshake: degrees sum to twice the edge count.
    std::uint64_t degree_sum = 0;
    for (VertexCode v = 0; v < g.order(); ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == 2 * g.size());

    // Neighbor lists agree with the edge set.
    for (VertexCode v = 0; v < g.order(); ++v) {
      for (VertexCode w : g.neighbors(v)) CHECK(streamed_edges.count({std::min(v, w), std::max(v, w)}) == 1);
    }
  }
}

TEST_CASE("property: runs cover the edge stream exactly") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + rng() % 4;
    const auto edges = oracle::random_connected_edges(k, rng() % 3, rng());
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto g = power_of(k, edges, n);
    std::vector<std::pair<VertexCode, VertexCode>> direct, from_runs;
    g.for_each_edge(0, g.size(), [&](std::uint64_t, VertexCode u, VertexCode w) { direct.push_back({u, w}); });
    std::uint64_t next = 0;
    g.for_each_run([&](std::uint64_t index, std::uint64_t u, std::uint64_t w, std::uint64_t len, std::uint64_t step) {
      CHECK(index == next);
      for (std::uint64_t t = 0; t < len; ++t) from_runs.push_back({u + t * step, w + t * step});
      next = index + len;
    });
    CHECK(next == g.size());
    CHECK(from_runs == direct);
  }
}

TEST_CASE("expected isolated count: closed form matches direct summation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + rng() % 5;
    const auto edges = oracle::random_connected_edges(k, rng() % 4, rng());
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto g = power_of(k, edges, n);
    for (double q : {0.1, 0.5, 0.9}) {
      double direct = 0;
      for (VertexCode v = 0; v < g.order(); ++v) direct += std::pow(q, g.degree(v));
      CHECK(g.expected_isolated(q) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
  CHECK(power_of(2, oracle::path_edges(2), 12).expected_isolated(0.5) == doctest::Approx(1.0));
}

TEST_CASE("explicit graphs through the view") {
  const auto view = oracle::explicit_graph(5, oracle::path_edges(5));
  CHECK(view.as_explicit() != nullptr);
  CHECK(view.as_power() == nullptr);
  CHECK(view.order() == 5);
  CHECK(view.size() == 4);
  CHECK(view.min_degree() == 1);
  CHECK(view.degree(2) == 2);
  CHECK(view.neighbors(2) == std::vector<VertexCode>{1, 3});
  CHECK(view.expected_isolated(0.5) == doctest::Approx(2 * 0.5 + 3 * 0.25));
  CHECK(edge_stream(view).size() == 4);

  // Connectivity is not required of an explicit graph.
  const auto split = oracle::explicit_graph(4, {{0, 1}, {2, 3}});
  CHECK(split.size() == 2);
}

TEST_CASE("materialize matches the streamed edge set") {
  const auto view = oracle::power(3, oracle::path_edges(3), 3);
  const auto simple = materialize(view);
  CHECK(simple.order() == 27);
  CHECK(simple.size() == view.size());
  for (const auto& e : edge_stream(view)) CHECK(simple.has_edge(e.u, e.v));
}

TEST_CASE("read_explicit_graph_file") {
  const auto g = read_explicit_graph_file(std::string(PERCOLAB_TEST_DATA) + "/p5.txt");
  CHECK(g.order() == 5);
  CHECK_THROWS_AS(read_explicit_graph_file(std::string(PERCOLAB_TEST_DATA) + "/bad.txt"), ParseError);
  CHECK_THROWS_AS(read_explicit_graph_file("/nonexistent/graph.txt"), ParseError);
}

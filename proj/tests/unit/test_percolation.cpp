#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "percolab/counter_rng.hpp"
#include "percolab/errors.hpp"
#include "percolab/percolation.hpp"
#include "percolab/stats.hpp"
#include "support/oracles.hpp"

using namespace percolab;

namespace {

// Component sizes of the retained subgraph by plain BFS over an adjacency list.
std::vector<std::uint64_t> oracle_component_sizes(std::uint64_t order, const std::vector<Edge>& kept) {
  std::vector<std::vector<std::uint64_t>> nb(order);
  for (auto e : kept) {
    nb[e.u].push_back(e.v);
    nb[e.v].push_back(e.u);
  }
  std::vector<char> seen(order, 0);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s < order; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint64_t> queue{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto w : nb[queue[i]]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  return sizes;
}

void check_against_oracle(const GraphView& g, const TrialPlan& plan, const TrialOutcome& got) {
  const auto edges = edge_stream(g);
  std::vector<Edge> kept;
  for (std::uint64_t i = 0; i < edges.size(); ++i) {
    if (edge_retained(plan, i)) kept.push_back(edges[i]);
  }
  const auto sizes = oracle_component_sizes(g.order(), kept);
  std::map<std::uint64_t, std::uint64_t> middle;
  std::uint64_t isolated = 0, large = 0, large_vertices = 0;
  for (auto s : sizes) {
    if (s == 1) {
      ++isolated;
    } else if (s <= g.order() / 2) {
      ++middle[s];
    } else {
      ++large;
      large_vertices += s;
    }
  }
  CHECK(got.retained_edges == kept.size());
  CHECK(got.connected == (sizes.size() == 1));
  CHECK(got.isolated_count == isolated);
  CHECK(got.census.large_components == large);
  CHECK(got.census.large_vertices == large_vertices);
  CHECK(got.census.middle == std::vector<std::pair<std::uint64_t, std::uint64_t>>(middle.begin(), middle.end()));
}

}  // namespace

TEST_CASE("counter stream is a pure function of its coordinates") {
  const CounterStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  CHECK(a.bits(0) == b.bits(0));
  CHECK(a.bits(123456) == b.bits(123456));
  CHECK(a.bits(0) != c.bits(0));
  CHECK(a.bits(0) != d.bits(0));
  CHECK(a.bits(0) != a.bits(1));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("Bernoulli threshold extremes") {
  CHECK_FALSE(BernoulliThreshold(0.0).accept(0));
  CHECK(BernoulliThreshold(1.0).accept(~std::uint64_t{0}));
  const BernoulliThreshold half(0.5);
  CHECK(half.accept(0));
  CHECK(half.accept((std::uint64_t{1} << 63) - 1));
  CHECK_FALSE(half.accept(std::uint64_t{1} << 63));
}

TEST_CASE("retention hooks") {
  const auto g = oracle::power(3, oracle::path_edges(3), 2);
  const auto all = run_trial(g, {0, 0, 0.5, Retention::all});
  CHECK(all.connected);
  CHECK(all.isolated_count == 0);
  CHECK(all.retained_edges == 12);
  CHECK(all.census.large_components == 1);
  CHECK(all.census.large_vertices == 9);
  CHECK_FALSE(all.census.has_middle_component());

  const auto none = run_trial(g, {0, 0, 0.5, Retention::none});
  CHECK_FALSE(none.connected);
  CHECK(none.isolated_count == 9);
  CHECK(none.retained_edges == 0);
  CHECK(none.census.large_components == 0);

  CHECK(edge_retained({0, 0, 0.5, Retention::all}, 3));
  CHECK_FALSE(edge_retained({0, 0, 0.5, Retention::none}, 3));
}

TEST_CASE("p = 0 and p = 1 under sampling") {
  const auto g = oracle::power(2, oracle::path_edges(2), 6);
  const auto full = run_trial(g, {9, 1, 1.0, Retention::sampled});
  CHECK(full.connected);
  CHECK(full.retained_edges == g.size());
  const auto empty = run_trial(g, {9, 1, 0.0, Retention::sampled});
  CHECK(empty.isolated_count == 64);
  CHECK(empty.retained_edges == 0);
}

TEST_CASE("property: trial census agrees with a BFS oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + rng() % 4;
    const auto edges = oracle::random_connected_edges(k, rng() % 3, rng());
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto g = oracle::power(k, edges, n);
    const TrialPlan plan{rng(), rng() % 100, 0.2 + 0.6 * std::uniform_real_distribution<>(0, 1)(rng),
                         Retention::sampled};
    check_against_oracle(g, plan, run_trial(g, plan));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t order = 3 + rng() % 30;
    const auto g = oracle::explicit_graph(order, oracle::random_connected_edges(order, rng() % 20, rng()));
    const TrialPlan plan{rng(), rng() % 100, 0.5, Retention::sampled};
    check_against_oracle(g, plan, run_trial(g, plan));
  }
}

TEST_CASE("property: census conserves vertices") {
  const auto g = oracle::power(3, oracle::path_edges(3), 5);
  TrialScratch scratch;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto out = run_trial(g, {5, t, 0.35, Retention::sampled}, scratch);
    std::uint64_t total = out.isolated_count + out.census.large_vertices;
    for (auto [size, count] : out.census.middle) total += size * count;
    CHECK(total == g.order());
    CHECK(out.census.large_components <= 1);
    if (out.connected) CHECK(out.isolated_count == 0);
  }
}

TEST_CASE("outcome is independent of the worker count") {
  const auto g = oracle::power(2, oracle::path_edges(2), 13);
  TrialScratch scratch;
  for (std::uint64_t t = 0; t < 5; ++t) {
    const TrialPlan plan{2024, t, 0.5, Retention::sampled};
    const auto one = run_trial(g, plan, scratch, 1);
    CHECK(run_trial(g, plan, scratch, 4) == one);
    CHECK(run_trial(g, plan, scratch, 8) == one);
  }
}

TEST_CASE("single edge K_2 at p = 0.3 matches the Bernoulli law") {
  const auto g = oracle::power(2, oracle::path_edges(2), 1);
  TrialScratch scratch;
  const std::uint64_t trials = 100000;
  std::uint64_t connected = 0;
  for (std::uint64_t t = 0; t < trials; ++t) connected += run_trial(g, {1, t, 0.3, Retention::sampled}, scratch).connected;
  const double sigma = std::sqrt(0.3 * 0.7 / trials);
  CHECK(std::abs(static_cast<double>(connected) / trials - 0.3) < 4 * sigma);
}

TEST_CASE("exact enumeration agrees with a brute-force oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t order = 2 + rng() % 7;
    const auto edges = oracle::random_connected_edges(order, rng() % 5, rng());
    const auto g = oracle::explicit_graph(order, edges);
    for (double p : {0.1, 0.5, 0.85}) {
      const auto exact = exact_percolation(g, p);
      CHECK(exact.connected == doctest::Approx(oracle::brute_connectivity(order, edges, p)).epsilon(1e-12));
      const auto brute = oracle::brute_isolated_distribution(order, edges, p);
      REQUIRE(exact.isolated_distribution.size() == brute.size());
      for (std::size_t x = 0; x < brute.size(); ++x) {
        CHECK(std::abs(exact.isolated_distribution[x] - brute[x]) < 1e-12);
      }
    }
  }
}

TEST_CASE("exact values on small fixtures") {
  SUBCASE("K_3 connectivity is 3p^2 - 2p^3") {
    const auto g = oracle::power(3, oracle::complete_edges(3), 1);
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      CHECK(exact_connectivity_probability(g, p) == doctest::Approx(3 * p * p - 2 * p * p * p).epsilon(1e-14));
    }
    CHECK(exact_connectivity_probability(g, 0.5) == doctest::Approx(0.5));
  }
  SUBCASE("P_3 isolated-vertex law at p = 1/2") {
    const auto dist = exact_isolated_distribution(oracle::power(3, oracle::path_edges(3), 1), 0.5);
    REQUIRE(dist.size() == 4);
    CHECK(dist[0] == doctest::Approx(0.25));
    CHECK(dist[1] == doctest::Approx(0.5));
    CHECK(dist[2] == doctest::Approx(0.0));
    CHECK(dist[3] == doctest::Approx(0.25));
  }
  SUBCASE("P_3^2 regression constants") {
    const auto g = oracle::power(3, oracle::path_edges(3), 2);
    CHECK(exact_connectivity_probability(g, 0.3) == doctest::Approx(0.004326579279).epsilon(1e-10));
    CHECK(exact_connectivity_probability(g, 0.5) == doctest::Approx(431.0 / 4096).epsilon(1e-13));
    CHECK(exact_connectivity_probability(g, 0.7) == doctest::Approx(0.510986195839).epsilon(1e-10));
    for (auto [p, mean] : {std::pair{0.3, 3.5721}, std::pair{0.5, 1.5625}, std::pair{0.7, 0.4761}}) {
      const auto dist = exact_isolated_distribution(g, p);
      double m = 0, total = 0;
      for (std::size_t x = 0; x < dist.size(); ++x) {
        m += x * dist[x];
        total += dist[x];
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(m == doctest::Approx(mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: exact connectivity is nondecreasing in p") {
  const auto g = oracle::power(3, oracle::path_edges(3), 2);
  double previous = 0;
  for (int i = 0; i <= 20; ++i) {
    const double value = exact_connectivity_probability(g, i / 20.0);
    CHECK(value >= previous - 1e-15);
    previous = value;
  }
  CHECK(previous == doctest::Approx(1.0));
}

TEST_CASE("exact enumeration edge cap") {
  const auto g = read_explicit_graph_file(std::string(PERCOLAB_TEST_DATA) + "/many30.txt");
  CHECK_THROWS_AS(exact_connectivity_probability(GraphView(g), 0.5), TooManyEdges);
  CHECK_THROWS_AS(exact_isolated_distribution(oracle::power(2, oracle::path_edges(2), 4), 0.5), TooManyEdges);
}

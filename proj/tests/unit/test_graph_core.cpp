#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "percolab/errors.hpp"
#include "percolab/graph_core.hpp"
#include "support/oracles.hpp"

using namespace percolab;

TEST_CASE("parse_graph accepts the smallest connected graph") {
  const auto g = parse_graph("2 1\n0 1\n");
  CHECK(g.k() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("parse_graph reads P_3 with comments, blank lines and CRLF") {
  const auto g = parse_graph("# path on three vertices\r\n3 2\r\n\r\n0 1  # left\r\n1 2\r\n");
  CHECK(g.k() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.min_degree() == 1);
  CHECK(g.max_degree() == 2);
}

TEST_CASE("parse_graph rejects malformed and invalid input") {
  CHECK_THROWS_AS(parse_graph("3 3\n0 1\n1 2\n0 2\n0 2\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 2\n0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 4\n0 1\n1 2\n0 2\n0 2\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 1\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 3\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 x\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 2 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 -2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph(""), ParseError);
  CHECK_THROWS_AS(parse_graph("4 2\n0 1\n2 3\n"), Disconnected);
  CHECK_THROWS_AS(parse_graph("2 0\n"), Disconnected);
  CHECK_THROWS_AS(parse_graph("1 0\n"), InvalidGraph);
}

TEST_CASE("duplicate edge in either orientation is rejected") {
  CHECK_THROWS_AS(parse_graph("3 4\n0 1\n1 2\n0 2\n2 0\n"), InvalidGraph);
}

TEST_CASE("is_connected") {
  CHECK(is_connected(parse_graph("2 1\n0 1\n")));
  CHECK(is_connected(parse_graph("3 2\n0 1\n1 2\n")));
  CHECK_FALSE(is_connected(SimpleGraph::from_edge_list(parse_edge_list("2 0\n"))));
  CHECK_FALSE(is_connected(SimpleGraph{}));
}

TEST_CASE("degree_polynomial coefficients") {
  SUBCASE("K_2") {
    const auto poly = degree_polynomial(parse_graph("2 1\n0 1\n"));
    CHECK(poly.coefficients() == std::map<std::uint32_t, std::uint64_t>{{1, 2}});
  }
  SUBCASE("P_3") {
    const auto poly = degree_polynomial(parse_graph("3 2\n0 1\n1 2\n"));
    CHECK(poly.coefficients() == std::map<std::uint32_t, std::uint64_t>{{1, 2}, {2, 1}});
  }
  SUBCASE("K_3") {
    const auto poly = degree_polynomial(parse_graph("3 3\n0 1\n1 2\n0 2\n"));
    CHECK(poly.coefficients() == std::map<std::uint32_t, std::uint64_t>{{2, 3}});
  }
}

TEST_CASE("eval_polynomial on P_3") {
  const auto poly = degree_polynomial(parse_graph("3 2\n0 1\n1 2\n"));
  CHECK(eval_polynomial(poly, 1.0) == 3.0);
  CHECK(eval_polynomial(poly, 0.0) == 0.0);
  CHECK(eval_polynomial(poly, 0.5) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("solve_threshold closed forms") {
  const auto k2 = degree_polynomial(parse_graph("2 1\n0 1\n"));
  const auto p3 = degree_polynomial(parse_graph("3 2\n0 1\n1 2\n"));
  const auto k3 = degree_polynomial(parse_graph("3 3\n0 1\n1 2\n0 2\n"));
  for (int n : {1, 5, 12}) {
    CAPTURE(n);
    CHECK(std::abs(solve_threshold(k2, 1.0, n).q - 0.5) < 1e-12);
    CHECK(std::abs(solve_threshold(p3, 1.0, n).q - (std::sqrt(2.0) - 1)) < 1e-10);
    CHECK(std::abs(solve_threshold(k3, 1.0, n).q - 1 / std::sqrt(3.0)) < 1e-10);
  }
  const auto sol = solve_threshold(p3, 1.0, 3);
  CHECK(sol.p == doctest::Approx(1 - sol.q));
  CHECK(sol.residual <= kThresholdTolerance);
}

TEST_CASE("solve_threshold rejects unreachable targets") {
  const auto k2 = degree_polynomial(parse_graph("2 1\n0 1\n"));
  CHECK_THROWS_AS(solve_threshold(k2, 5e12, 1), TargetOutOfRange);
  CHECK_THROWS_AS(solve_threshold(k2, 2.0, 1), TargetOutOfRange);
  CHECK_THROWS_AS(solve_threshold(k2, 0.0, 3), TargetOutOfRange);
  CHECK_THROWS_AS(solve_threshold(k2, -1.0, 3), TargetOutOfRange);
}

TEST_CASE("property: polynomial and solver invariants over random connected graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + rng() % 12;
    const auto edges = oracle::random_connected_edges(k, rng() % (k + 1), rng());
    const auto g = oracle::base(k, edges);
    const auto poly = degree_polynomial(g);
    CHECK(eval_polynomial(poly, 1.0) == static_cast<double>(k));

    const int n = 1 + static_cast<int>(rng() % 10);
    double previous_q = 0;
    for (double lambda : {0.05, 0.3, 1.0, 2.5, 7.0}) {
      if (std::pow(lambda, 1.0 / n) >= static_cast<double>(k)) continue;
      const auto sol = solve_threshold(poly, lambda, n);
      CHECK(sol.q > 0);
      CHECK(sol.q < 1);
      CHECK(std::abs(eval_polynomial(poly, sol.q) - std::pow(lambda, 1.0 / n)) <= 1e-12);
      CHECK(sol.q > previous_q);
      previous_q = sol.q;
    }
  }
}

TEST_CASE("property: regular and path closed forms") {
  // d-regular: cycles C_k (d = 2) and complete graphs K_k (d = k - 1).
  for (std::size_t k = 3; k <= 9; ++k) {
    for (const auto& [edges, d] : {std::pair{oracle::cycle_edges(k), 2.0},
                                   std::pair{oracle::complete_edges(k), static_cast<double>(k - 1)}}) {
      const auto poly = degree_polynomial(oracle::base(k, edges));
      for (int n : {1, 4, 10}) {
        for (double lambda : {0.5, 1.0, 3.0}) {
          if (std::pow(lambda, 1.0 / n) >= static_cast<double>(k)) continue;
          const double expected = std::pow(std::pow(lambda, 1.0 / n) / static_cast<double>(k), 1.0 / d);
          CHECK(std::abs(solve_threshold(poly, lambda, n).q - expected) < 1e-10);
        }
      }
    }
  }
  for (std::size_t k = 3; k <= 12; ++k) {
    const auto poly = degree_polynomial(oracle::base(k, oracle::path_edges(k)));
    for (int n : {1, 3, 8}) {
      for (double lambda : {0.5, 1.0, 3.0}) {
        const double t = std::pow(lambda, 1.0 / n);
        if (t >= static_cast<double>(k)) continue;
        const double kk = static_cast<double>(k) - 2;
        CHECK(std::abs(solve_threshold(poly, lambda, n).q - (-1 + std::sqrt(1 + kk * t)) / kk) < 1e-10);
      }
    }
  }
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "percolab/bounds.hpp"
#include "percolab/errors.hpp"
#include "percolab/graph_core.hpp"
#include "percolab/percolation.hpp"
#include "percolab/power_graph.hpp"
#include "percolab/report_io.hpp"
#include "percolab/stats.hpp"

namespace py = pybind11;
using namespace percolab;

namespace {

const PowerGraph& require_power(const GraphView& g) {
  const auto* p = g.as_power();
  if (!p) throw InvalidArgument("operation requires a Cartesian power graph");
  return *p;
}

std::vector<std::pair<Vertex, Vertex>> edge_pairs(std::span<const Edge> edges) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of percolab";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
  (void)domain;

  py::class_<BaseGraph>(m, "BaseGraph")
      .def_property_readonly("k", &BaseGraph::k)
      .def_property_readonly("edge_count", &BaseGraph::edge_count)
      .def_property_readonly("edges", [](const BaseGraph& g) { return edge_pairs(g.edges()); })
      .def("degree", &BaseGraph::degree)
      .def_property_readonly("min_degree", &BaseGraph::min_degree)
      .def_property_readonly("max_degree", &BaseGraph::max_degree);

  m.def("parse_graph", &parse_graph, py::arg("text"), "Parse and validate a connected base graph");
  m.def("read_base_graph", &read_base_graph_file, py::arg("path"));

  py::class_<DegreePolynomial>(m, "DegreePolynomial")
      .def_property_readonly("coefficients", &DegreePolynomial::coefficients)
      .def("__call__", &DegreePolynomial::operator(), py::arg("x"));
  m.def("degree_polynomial", &degree_polynomial, py::arg("base"));
  m.def("eval_polynomial", &eval_polynomial, py::arg("poly"), py::arg("x"));

  py::class_<ThresholdSolution>(m, "ThresholdSolution")
      .def_readonly("q", &ThresholdSolution::q)
      .def_readonly("p", &ThresholdSolution::p)
      .def_readonly("target", &ThresholdSolution::target)
      .def_readonly("residual", &ThresholdSolution::residual)
      .def("__repr__", [](const ThresholdSolution& s) {
        return "ThresholdSolution(q=" + format_double(s.q) + ", p=" + format_double(s.p) + ")";
      });
  m.def("solve_threshold", &solve_threshold, py::arg("poly"), py::arg("lambda_n"), py::arg("n"));

  py::class_<GraphView>(m, "Graph")
      .def_static("power", [](const BaseGraph& base, int n) { return GraphView(PowerGraph(base, n)); },
                  py::arg("base"), py::arg("n"))
      .def_static("explicit",
                  [](const std::string& text) {
                    return GraphView(ExplicitGraph(SimpleGraph::from_edge_list(parse_edge_list(text))));
                  },
                  py::arg("text"))
      .def_static("read_explicit", [](const std::string& path) { return GraphView(read_explicit_graph_file(path)); },
                  py::arg("path"))
      .def_property_readonly("is_power", [](const GraphView& g) { return g.as_power() != nullptr; })
      .def_property_readonly("order", &GraphView::order)
      .def_property_readonly("size", &GraphView::size)
      .def_property_readonly("min_degree", &GraphView::min_degree)
      .def_property_readonly("max_degree", &GraphView::max_degree)
      .def("degree", &GraphView::degree, py::arg("v"))
      .def("neighbors", &GraphView::neighbors, py::arg("v"))
      .def("edges", [](const GraphView& g) { return edge_pairs(edge_stream(g)); })
      .def("expected_isolated", &GraphView::expected_isolated, py::arg("q"))
      .def("encode", [](const GraphView& g, const std::vector<Vertex>& digits) {
             return require_power(g).encode(digits);
           }, py::arg("digits"))
      .def("decode", [](const GraphView& g, VertexCode code) { return require_power(g).decode(code); },
           py::arg("code"));

  m.def("run_trial_json",
        [](const GraphView& g, double p, std::uint64_t seed, std::uint64_t trial_index) {
          const TrialPlan plan{seed, trial_index, p, Retention::sampled};
          return to_json(run_trial(g, plan)).dump();
        },
        py::arg("graph"), py::arg("p"), py::arg("seed") = 0, py::arg("trial_index") = 0);

  m.def("exact_connectivity_probability", &exact_connectivity_probability, py::arg("graph"), py::arg("p"));
  m.def("exact_isolated_distribution", &exact_isolated_distribution, py::arg("graph"), py::arg("p"));

  m.def("run_experiment_json",
        [](const GraphView& g, std::optional<double> lambda, std::optional<double> p,
           std::uint64_t trials, std::uint64_t seed, int r_max, unsigned workers, bool timing) {
          ExperimentConfig cfg{g};
          cfg.lambda = lambda;
          cfg.p = p;
          cfg.trials = trials;
          cfg.master_seed = seed;
          cfg.r_max = r_max;
          cfg.workers = workers;
          py::gil_scoped_release release;
          return to_json(run_experiment(cfg), timing).dump();
        },
        py::arg("graph"), py::arg("lambda_") = py::none(), py::arg("p") = py::none(),
        py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("r_max") = 4,
        py::arg("workers") = 1, py::arg("timing") = false);

  m.def("factorial_moments",
        [](const std::vector<std::uint64_t>& samples, int r_max) {
          std::vector<std::pair<double, double>> out;
          for (const auto& fm : factorial_moments(samples, r_max)) out.emplace_back(fm.estimate, fm.standard_error);
          return out;
        },
        py::arg("samples"), py::arg("r_max") = 4);
  m.def("poisson_tv_distance",
        [](const std::vector<double>& pmf, double lambda) { return poisson_tv_distance(pmf, lambda); },
        py::arg("pmf"), py::arg("lambda_"));
  m.def("wilson_interval", &wilson_interval, py::arg("successes"), py::arg("trials"),
        py::arg("confidence") = 0.95);

  m.def("boundary_of_set",
        [](const GraphView& g, const std::vector<VertexCode>& set) { return boundary_of_set(g, set); },
        py::arg("graph"), py::arg("vertices"));
  m.def("min_boundary",
        [](const GraphView& g, std::uint64_t s) { return min_boundary(g, s).value; },
        py::arg("graph"), py::arg("s"));
  m.def("isoperimetric_profile",
        [](const GraphView& g) { return isoperimetric_profile(g).values; }, py::arg("graph"));
  m.def("tillich_constant_estimate",
        [](const BaseGraph& base, const std::vector<int>& n_values) {
          return tillich_constant_estimate(base, n_values).constant;
        },
        py::arg("base"), py::arg("n_values"));
  m.def("check_basic_conditions_json",
        [](const GraphView& g, int n, std::uint32_t k, double eps_prime, double c, double eps) {
          return to_json(check_basic_conditions_at(g, n, k, {eps_prime, c, eps})).dump();
        },
        py::arg("graph"), py::arg("n"), py::arg("k"), py::arg("epsilon_prime") = 0.5,
        py::arg("c") = 1.0, py::arg("epsilon") = 1.0);
  m.def("randomized_dominating_set_json",
        [](const GraphView& g, const std::vector<VertexCode>& given, std::uint32_t delta, std::uint64_t seed) {
          return to_json(randomized_dominating_set(g, given, delta, seed)).dump();
        },
        py::arg("graph"), py::arg("given"), py::arg("delta"), py::arg("seed") = 0);
  m.def("ell_dominating_set_json",
        [](const GraphView& g, std::uint32_t ell) { return to_json(ell_dominating_set(g, ell)).dump(); },
        py::arg("graph"), py::arg("ell"));
}

// percolab: command-line front end for the percolation laboratory.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "percolab/bounds.hpp"
#include "percolab/errors.hpp"
#include "percolab/graph_core.hpp"
#include "percolab/percolation.hpp"
#include "percolab/power_graph.hpp"
#include "percolab/report_io.hpp"
#include "percolab/stats.hpp"

namespace {

using namespace percolab;

enum class Format { json, csv };

struct GraphSource {
  std::string base;
  std::string graph;
  int n = 0;
};

struct Output {
  std::string format = "json";
  std::string path;

  Format fmt() const { return format == "csv" ? Format::csv : Format::json; }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
  }
  void write(const Json& j) const { write(j.dump(2) + "\n"); }
};

void add_graph_options(CLI::App* cmd, GraphSource& src, bool need_n = true) {
  auto* base = cmd->add_option("--base", src.base, "Base graph H (edge list); the graph is H^n");
  auto* graph = cmd->add_option("--graph", src.graph, "Explicit graph G_n (edge list)");
  base->excludes(graph);
  if (need_n) cmd->add_option("--n", src.n, "Exponent n of the Cartesian power")->check(CLI::PositiveNumber);
}

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "Write to this file instead of standard output");
}

GraphView load_graph(const GraphSource& src) {
  if (!src.graph.empty()) return GraphView(read_explicit_graph_file(src.graph));
  if (src.base.empty()) throw InvalidArgument("one of --base or --graph is required");
  if (src.n < 1) throw InvalidArgument("--base requires --n >= 1");
  return GraphView(PowerGraph(read_base_graph_file(src.base), src.n));
}

std::string source_id(const GraphSource& src) {
  if (!src.graph.empty()) return src.graph;
  return src.base + "^" + std::to_string(src.n);
}

/// "8:14:2" (inclusive, step), "8:14" (step 1) or "8,10,12".
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<int> parts;
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ':');) parts.push_back(std::stoi(item));
      if (parts.size() < 2 || parts.size() > 3) throw InvalidArgument("bad range '" + text + "'");
      const int step = parts.size() == 3 ? parts[2] : 1;
      if (step <= 0) throw InvalidArgument("range step must be positive");
      for (int v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    } else {
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(std::stoi(item));
      }
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad integer list '" + text + "'");
  }
  return out;
}

std::vector<VertexCode> parse_vertex_list(const std::string& text) {
  std::vector<VertexCode> out;
  for (int v : parse_int_list(text)) {
    if (v < 0) throw InvalidArgument("negative vertex in '" + text + "'");
    out.push_back(static_cast<VertexCode>(v));
  }
  return out;
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-percolation laboratory for Cartesian powers and sparse graphs"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve P(H, q) = lambda^(1/n) for the threshold");
  std::string solve_base;
  double solve_lambda = 1;
  int solve_n = 1;
  Output solve_out;
  solve->add_option("--base", solve_base, "Base graph H (edge list)")->required();
  solve->add_option("--lambda", solve_lambda, "Target expected isolated-vertex count")->required();
  solve->add_option("--n", solve_n, "Exponent n")->required()->check(CLI::PositiveNumber);
  add_output_options(solve, solve_out);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo percolation experiment");
  GraphSource sim_src;
  std::optional<double> sim_lambda;
  std::optional<double> sim_p;
  std::uint64_t sim_trials = 10000;
  std::uint64_t sim_seed = 0;
  unsigned sim_workers = default_workers();
  int sim_rmax = 4;
  std::string sim_sweep;
  bool sim_deterministic = false;
  Output sim_out;
  add_graph_options(simulate, sim_src);
  auto* lambda_opt = simulate->add_option("--lambda", sim_lambda, "Target E[X]; fixes p");
  auto* p_opt = simulate->add_option("--p", sim_p, "Retention probability override");
  lambda_opt->excludes(p_opt);
  simulate->add_option("--trials", sim_trials, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Master seed")->envname("PERCOLAB_SEED")->capture_default_str();
  simulate->add_option("--workers", sim_workers, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--rmax", sim_rmax, "Highest factorial moment")->check(CLI::PositiveNumber);
  simulate->add_option("--sweep", sim_sweep, "Exponents for a convergence sweep, e.g. 8:14:2");
  simulate->add_flag("--deterministic", sim_deterministic, "Omit timing fields");
  add_output_options(simulate, sim_out);

  // exact
  auto* exact = app.add_subcommand("exact", "Exact connectivity probability and isolated-count law");
  GraphSource exact_src;
  double exact_p = 0.5;
  Output exact_out;
  add_graph_options(exact, exact_src);
  exact->add_option("--p", exact_p, "Retention probability")->required()->check(CLI::Range(0.0, 1.0));
  add_output_options(exact, exact_out);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Structural verifiers");
  bounds->require_subcommand(1);

  auto* profile = bounds->add_subcommand("profile", "Edge-isoperimetric profile b(s)");
  GraphSource prof_src;
  std::optional<std::uint64_t> prof_smax;
  unsigned prof_workers = 1;
  Output prof_out;
  add_graph_options(profile, prof_src);
  profile->add_option("--smax", prof_smax, "Largest s (default order/2)");
  profile->add_option("--workers", prof_workers, "Enumeration threads")->check(CLI::PositiveNumber);
  add_output_options(profile, prof_out);

  auto* conditions = bounds->add_subcommand("conditions", "Check the five basic conditions");
  GraphSource cond_src;
  std::string cond_range;
  std::uint32_t cond_k = 0;
  BasicConditionsParams cond_params;
  Output cond_out;
  add_graph_options(conditions, cond_src);
  conditions->add_option("--n-range", cond_range, "Exponents to check for --base, e.g. 2:4");
  conditions->add_option("--k", cond_k, "k for an explicit --graph (order should be k^n)");
  conditions->add_option("--eps", cond_params.epsilon, "epsilon")->capture_default_str();
  conditions->add_option("--eps-prime", cond_params.epsilon_prime, "epsilon'")->capture_default_str();
  conditions->add_option("--c", cond_params.c, "c")->capture_default_str();
  add_output_options(conditions, cond_out);

  auto* tillich = bounds->add_subcommand("tillich", "Empirical isoperimetric constant of H^n");
  std::string till_base;
  int till_nmax = 0;
  std::string till_range;
  Output till_out;
  tillich->add_option("--base", till_base, "Base graph H")->required();
  tillich->add_option("--n-max", till_nmax, "Use n = 1..n-max");
  tillich->add_option("--n-range", till_range, "Explicit exponents, e.g. 1:4");
  add_output_options(tillich, till_out);

  auto* dominate = bounds->add_subcommand("dominate", "Constructive domination bounds");
  GraphSource dom_src;
  std::optional<std::uint32_t> dom_ell;
  std::string dom_w;
  std::optional<std::uint32_t> dom_delta;
  std::uint64_t dom_seed = 0;
  Output dom_out;
  add_graph_options(dominate, dom_src);
  dominate->add_option("--ell", dom_ell, "Distance ell for ell-domination")->check(CLI::PositiveNumber);
  dominate->add_option("--w", dom_w, "Given set W for the randomized construction, e.g. 2,5");
  dominate->add_option("--delta", dom_delta, "Degree floor outside W (default: observed minimum)");
  dominate->add_option("--seed", dom_seed, "Seed")->envname("PERCOLAB_SEED");
  add_output_options(dominate, dom_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) {
      const auto base = read_base_graph_file(solve_base);
      const auto sol = solve_threshold(degree_polynomial(base), solve_lambda, solve_n);
      if (solve_out.fmt() == Format::csv) {
        solve_out.write("q,p,target,residual\n" + format_double(sol.q) + "," + format_double(sol.p) +
                        "," + format_double(sol.target) + "," + format_double(sol.residual) + "\n");
      } else {
        solve_out.write(envelope("threshold", to_json(sol)));
      }
    } else if (*simulate) {
      const bool timing = !sim_deterministic;
      std::vector<ExperimentReport> reports;
      if (!sim_sweep.empty()) {
        if (sim_src.base.empty()) throw InvalidArgument("--sweep requires --base");
        if (!sim_lambda) throw InvalidArgument("--sweep requires --lambda");
        const auto n_values = parse_int_list(sim_sweep);
        reports = convergence_sweep(read_base_graph_file(sim_src.base), *sim_lambda, n_values,
                                    sim_trials, sim_seed, sim_rmax, sim_workers);
      } else {
        ExperimentConfig cfg{load_graph(sim_src)};
        cfg.lambda = sim_lambda;
        cfg.p = sim_p;
        cfg.trials = sim_trials;
        cfg.master_seed = sim_seed;
        cfg.r_max = sim_rmax;
        cfg.workers = sim_workers;
        reports.push_back(run_experiment(cfg));
      }
      if (sim_out.fmt() == Format::csv) {
        std::string text = report_csv_header(timing) + "\n";
        for (const auto& r : reports) text += report_csv_row(r, timing) + "\n";
        sim_out.write(text);
      } else if (sim_sweep.empty()) {
        sim_out.write(to_json(reports.front(), timing));
      } else {
        Json table = Json::array();
        for (const auto& r : reports) table.push_back(to_json(r, timing));
        sim_out.write(envelope("sweep", Json{{"reports", table}}));
      }
    } else if (*exact) {
      const auto g = load_graph(exact_src);
      const auto summary = exact_percolation(g, exact_p);
      double mean = 0;
      for (std::size_t x = 0; x < summary.isolated_distribution.size(); ++x) {
        mean += static_cast<double>(x) * summary.isolated_distribution[x];
      }
      if (exact_out.fmt() == Format::csv) {
        std::string text = "x,probability\n";
        for (std::size_t x = 0; x < summary.isolated_distribution.size(); ++x) {
          text += std::to_string(x) + "," + format_double(summary.isolated_distribution[x]) + "\n";
        }
        exact_out.write(text);
      } else {
        exact_out.write(envelope("exact", Json{{"graph", source_id(exact_src)},
                                               {"order", g.order()},
                                               {"size", g.size()},
                                               {"p", exact_p},
                                               {"connected_probability", summary.connected},
                                               {"isolated_mean", mean},
                                               {"isolated_distribution", summary.isolated_distribution}}));
      }
    } else if (*profile) {
      MinBoundaryOptions opts;
      opts.workers = prof_workers;
      const auto prof = isoperimetric_profile(load_graph(prof_src), source_id(prof_src), prof_smax, opts);
      if (prof_out.fmt() == Format::csv) {
        prof_out.write(profile_csv(prof));
      } else {
        prof_out.write(envelope("profile", to_json(prof)));
      }
    } else if (*conditions) {
      std::vector<ConditionsReport> reports;
      if (!cond_src.graph.empty()) {
        if (cond_k < 2 || cond_src.n < 1) throw InvalidArgument("--graph requires --k >= 2 and --n >= 1");
        reports.push_back(check_basic_conditions_at(load_graph(cond_src), cond_src.n, cond_k, cond_params));
      } else {
        if (cond_src.base.empty()) throw InvalidArgument("one of --base or --graph is required");
        const auto base = read_base_graph_file(cond_src.base);
        std::vector<int> n_values = cond_range.empty() ? std::vector<int>{cond_src.n} : parse_int_list(cond_range);
        if (n_values.empty() || n_values.front() < 1) throw InvalidArgument("need --n or --n-range");
        reports = check_basic_conditions([&](int n) { return GraphView(PowerGraph(base, n)); },
                                         base.k(), cond_params, n_values);
      }
      bool all = true;
      Json items = Json::array();
      for (const auto& r : reports) {
        all = all && r.all_pass();
        items.push_back(to_json(r));
      }
      if (cond_out.fmt() == Format::csv) {
        std::string text = "n,condition,pass,lhs,rhs\n";
        for (const auto& r : reports) {
          for (const auto& c : r.conditions) {
            text += std::to_string(r.n) + "," + std::to_string(c.condition) + "," +
                    (c.pass ? "true" : "false") + "," + format_double(c.lhs) + "," +
                    format_double(c.rhs) + "\n";
          }
        }
        cond_out.write(text);
      } else {
        cond_out.write(envelope("conditions", Json{{"all_pass", all}, {"reports", items}}));
      }
    } else if (*tillich) {
      std::vector<int> n_values;
      if (!till_range.empty()) {
        n_values = parse_int_list(till_range);
      } else {
        if (till_nmax < 1) throw InvalidArgument("need --n-max or --n-range");
        for (int n = 1; n <= till_nmax; ++n) n_values.push_back(n);
      }
      const auto est = tillich_constant_estimate(read_base_graph_file(till_base), n_values);
      if (till_out.fmt() == Format::csv) {
        till_out.write("constant,n_at,s_at\n" + format_double(est.constant) + "," +
                       std::to_string(est.n_at) + "," + std::to_string(est.s_at) + "\n");
      } else {
        till_out.write(envelope("tillich", to_json(est)));
      }
    } else if (*dominate) {
      const auto g = load_graph(dom_src);
      DominatingSetResult result;
      std::string mode;
      if (dom_ell) {
        mode = "ell";
        result = ell_dominating_set(g, *dom_ell);
      } else {
        mode = "randomized";
        const auto w = parse_vertex_list(dom_w);
        std::uint32_t delta = 0;
        if (dom_delta) {
          delta = *dom_delta;
        } else {
          std::vector<char> in_w(g.order(), 0);
          for (auto v : w) {
            if (v < g.order()) in_w[v] = 1;
          }
          delta = std::numeric_limits<std::uint32_t>::max();
          for (VertexCode v = 0; v < g.order(); ++v) {
            if (!in_w[v]) delta = std::min(delta, g.degree(v));
          }
          if (delta == std::numeric_limits<std::uint32_t>::max()) delta = 0;
        }
        result = randomized_dominating_set(g, w, delta, dom_seed);
      }
      Json payload = to_json(result);
      payload["mode"] = mode;
      if (dom_ell) payload["ell"] = *dom_ell;
      if (dom_out.fmt() == Format::csv) {
        std::string text = "vertex\n";
        for (auto v : result.set) text += std::to_string(v) + "\n";
        dom_out.write(text);
      } else {
        dom_out.write(envelope("dominating_set", payload));
      }
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

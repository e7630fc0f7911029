#include "percolab/report_io.hpp"

#include <charconv>
#include <sstream>

namespace percolab {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

Json proportion_json(const ProportionEstimate& e) {
  return Json{{"estimate", e.value},
              {"successes", e.successes},
              {"trials", e.trials},
              {"wilson95", Json::array({e.lo, e.hi})}};
}

constexpr int kCsvMoments = 4;

}  // namespace

Json envelope(const std::string& kind, Json payload) {
  Json out{{"schema", kSchemaVersion}, {"kind", kind}};
  for (auto& [key, value] : payload.items()) out[key] = value;
  return out;
}

Json to_json(const ExperimentReport& r, bool include_timing) {
  Json graph{{"kind", r.graph.kind}, {"order", r.graph.order}, {"size", r.graph.size}};
  if (r.graph.kind == "power") {
    graph["k"] = r.graph.k;
    graph["n"] = r.graph.n;
  }
  Json moments = Json::array();
  for (const auto& m : r.factorial_moments) {
    moments.push_back({{"r", m.r}, {"estimate", m.estimate}, {"stderr", m.standard_error}});
  }
  Json out{{"schema", kSchemaVersion},
           {"kind", "experiment"},
           {"graph", graph},
           {"lambda", r.lambda},
           {"lambda_source", r.lambda_given ? "target" : "implied"},
           {"p", r.p},
           {"q", r.q},
           {"expected_isolated", r.expected_isolated},
           {"trials", r.trials},
           {"master_seed", r.master_seed},
           {"connected", proportion_json(r.connected)},
           {"no_isolated", proportion_json(r.no_isolated)},
           {"middle_component", proportion_json(r.middle_component)},
           {"isolated",
            {{"mean", r.isolated_mean}, {"stderr", r.isolated_mean_se}, {"pmf", r.isolated_pmf}}},
           {"factorial_moments", moments},
           {"poisson_tv_distance", r.poisson_tv_distance},
           {"exp_minus_lambda", r.exp_minus_lambda}};
  if (include_timing) {
    out["timing"] = {{"wall_seconds", r.wall_seconds},
                     {"trials_per_second", r.trials_per_second},
                     {"workers", r.workers}};
  }
  return out;
}

Json to_json(const ThresholdSolution& sol) {
  return Json{{"q", sol.q},
              {"p", sol.p},
              {"target", sol.target},
              {"residual", sol.residual},
              {"iterations", sol.iterations}};
}

Json to_json(const IsoperimetricProfile& profile) {
  Json values = Json::array();
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    values.push_back({{"s", i + 1}, {"b", profile.values[i]}});
  }
  return Json{{"graph", profile.graph_id},
              {"method", to_string(profile.method)},
              {"profile", profile.values},
              {"values", values}};
}

Json to_json(const ConditionsReport& report) {
  Json conditions = Json::array();
  for (const auto& c : report.conditions) {
    Json item{{"condition", c.condition},
              {"pass", c.pass},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"detail", c.detail}};
    if (c.witness_vertex) item["witness_vertex"] = *c.witness_vertex;
    if (c.witness_s) item["witness_s"] = *c.witness_s;
    if (c.witness_boundary) item["witness_boundary"] = *c.witness_boundary;
    if (!c.checked.empty()) {
      Json checked = Json::array();
      for (auto [s, b] : c.checked) checked.push_back(Json::array({s, b}));
      item["checked"] = checked;
    }
    conditions.push_back(item);
  }
  return Json{{"n", report.n},
              {"k", report.k},
              {"all_pass", report.all_pass()},
              {"conditions", conditions}};
}

Json to_json(const TillichEstimate& e) {
  return Json{{"constant", e.constant}, {"n_at", e.n_at}, {"s_at", e.s_at}};
}

Json to_json(const DominatingSetResult& r) {
  Json out{{"set", r.set}, {"size", r.set.size()}, {"bound", r.bound}, {"verified", r.verified}};
  if (!r.given.empty()) out["given"] = r.given;
  if (r.attempts > 0) out["attempts"] = r.attempts;
  return out;
}

Json to_json(const TrialOutcome& o) {
  Json middle = Json::array();
  for (auto [size, count] : o.census.middle) middle.push_back(Json::array({size, count}));
  return Json{{"connected", o.connected},
              {"isolated_count", o.isolated_count},
              {"retained_edges", o.retained_edges},
              {"census",
               {{"middle", middle},
                {"large_components", o.census.large_components},
                {"large_vertices", o.census.large_vertices}}}};
}

std::string report_csv_header(bool include_timing) {
  std::string h =
      "kind,k,n,order,size,lambda,lambda_source,p,q,expected_isolated,trials,master_seed,"
      "p_connected,p_connected_lo,p_connected_hi,p_no_isolated,p_no_isolated_lo,"
      "p_no_isolated_hi,p_middle,p_middle_lo,p_middle_hi,isolated_mean,isolated_mean_se,"
      "poisson_tv_distance,exp_minus_lambda";
  for (int r = 1; r <= kCsvMoments; ++r) h += ",E" + std::to_string(r);
  if (include_timing) h += ",wall_seconds,trials_per_second,workers";
  return h;
}

std::string report_csv_row(const ExperimentReport& r, bool include_timing) {
  std::ostringstream os;
  auto d = [](double x) { return format_double(x); };
  os << r.graph.kind << ',';
  if (r.graph.kind == "power") {
    os << r.graph.k << ',' << r.graph.n;
  } else {
    os << ',';
  }
  os << ',' << r.graph.order << ',' << r.graph.size << ',' << d(r.lambda) << ','
     << (r.lambda_given ? "target" : "implied") << ',' << d(r.p) << ',' << d(r.q) << ','
     << d(r.expected_isolated) << ',' << r.trials << ',' << r.master_seed;
  for (const auto* e : {&r.connected, &r.no_isolated, &r.middle_component}) {
    os << ',' << d(e->value) << ',' << d(e->lo) << ',' << d(e->hi);
  }
  os << ',' << d(r.isolated_mean) << ',' << d(r.isolated_mean_se) << ','
     << d(r.poisson_tv_distance) << ',' << d(r.exp_minus_lambda);
  for (int i = 0; i < kCsvMoments; ++i) {
    os << ',';
    if (static_cast<std::size_t>(i) < r.factorial_moments.size()) {
      os << d(r.factorial_moments[static_cast<std::size_t>(i)].estimate);
    }
  }
  if (include_timing) {
    os << ',' << d(r.wall_seconds) << ',' << d(r.trials_per_second) << ',' << r.workers;
  }
  return os.str();
}

std::string profile_csv(const IsoperimetricProfile& profile) {
  std::string out = "s,b\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    out += std::to_string(i + 1) + ',' + std::to_string(profile.values[i]) + '\n';
  }
  return out;
}

}  // namespace percolab

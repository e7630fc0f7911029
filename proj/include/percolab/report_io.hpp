#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "percolab/bounds.hpp"
#include "percolab/graph_core.hpp"
#include "percolab/percolation.hpp"
#include "percolab/stats.hpp"

namespace percolab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Full report. Timing fields are emitted only when include_timing is set.
Json to_json(const ExperimentReport& report, bool include_timing);
Json to_json(const ThresholdSolution& sol);
Json to_json(const IsoperimetricProfile& profile);
Json to_json(const ConditionsReport& report);
Json to_json(const TillichEstimate& estimate);
Json to_json(const DominatingSetResult& result);
Json to_json(const TrialOutcome& outcome);

/// Wraps a payload in the versioned envelope {"schema": 1, "kind": ..., ...}.
Json envelope(const std::string& kind, Json payload);

std::string report_csv_header(bool include_timing);
std::string report_csv_row(const ExperimentReport& report, bool include_timing);

/// CSV of (s, b(s)) rows.
std::string profile_csv(const IsoperimetricProfile& profile);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace percolab

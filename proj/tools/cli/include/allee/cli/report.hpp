#pragma once

// JSON and CSV serialization of analysis results. JSON objects use sorted
// keys and shortest round-trip number formatting, so re-serializing a parsed
// report reproduces it byte for byte.

#include <string>
#include <vector>

#include <json.hpp>

#include "allee/bifurcations.hpp"
#include "allee/dynamics.hpp"
#include "allee/equilibria.hpp"

namespace allee::cli {

using nlohmann::json;

struct AnalysisReport {
  ModelParams params;
  BranchDiscriminants discriminants;
  std::vector<Equilibrium> equilibria;
  Thresholds thresholds;
  /// Critical surfaces the point lies on: any of h1, h2, h3, s1, s2, s3.
  std::vector<std::string> bifurcation_flags;
};

AnalysisReport analyze(const ModelParams& p);

/// Relative tolerance for putting a parameter point on a critical surface.
inline constexpr double kFlagTolerance = 1e-9;
std::vector<std::string> critical_flags(const ModelParams& p, const Thresholds& t);

json to_json(const ModelParams& p);
json to_json(const Equilibrium& e);
json to_json(const Thresholds& t);
json to_json(const AnalysisReport& r);
json to_json(const HopfReport& r);
json to_json(const BtLadder& l);
json to_json(const BTReport& r, const ModelParams& base);
json to_json(const Trajectory& t);

ModelParams params_from_json(const json& j);
AnalysisReport analysis_from_json(const json& j);

/// Canonical text form: two-space indent, trailing newline.
std::string dump(const json& j);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::string equilibria_csv(const AnalysisReport& r);
std::string hopf_csv(const HopfReport& r);
std::string bt_csv(const std::vector<BTReport>& reports);
std::string trajectory_csv(const Trajectory& t);

}  // namespace allee::cli

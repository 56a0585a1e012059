#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcop/space.hpp"

namespace wcop {

/// Where a threshold comes from.
enum class Provenance {
  Structural,  // holds by construction (diagonal blocks, exact identities)
  Theorem,     // the sign or shape is a proven fact about the operator
  Oracle,      // magnitude pinned by the independent oracle run
};

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct CheckResult {
  std::string name;
  std::string space;  // label, or "-" for space-free checks
  int order = 0;
  int internal_order = 0;
  double value = 0.0;
  /// "<=", ">=", "<", ">", "abs-dev<=" (|value - 1| <= threshold) or "report".
  std::string comparator;
  double threshold = 0.0;
  Provenance provenance = Provenance::Structural;
  bool passed = true;
};

bool compare(double value, std::string_view comparator, double threshold);

struct ScenarioReport {
  std::string id;
  std::string claim;
  bool exploratory = false;
  std::vector<CheckResult> checks;
  double runtime_s = 0.0;

  /// All gating checks passed (always true for exploratory scenarios).
  bool passed() const;
  /// "PASS", "FAIL" or "REPORT".
  std::string verdict() const;
};

struct ScenarioInfo {
  std::string id;
  std::string claim;
  bool exploratory = false;
};

struct Overrides {
  std::optional<int> order;           // N for every check
  std::optional<int> internal_order;  // M for every check
  std::optional<double> tol;          // certificate tolerance of sign probes
  int scale = 1;                      // multiplies default N and M
  /// Restricts the spaces a scenario runs on; empty means its registered set.
  std::vector<SpaceSpec> spaces;
};

std::vector<ScenarioInfo> list_scenarios();

/// Throws InvalidInput for an unknown id.
ScenarioReport run_scenario(std::string_view id, const Overrides& overrides = {});

struct OracleThreshold {
  std::string id;
  std::string space;
  double value = 0.0;
  double bound = 0.0;
  std::string comparator;
};

/// Entries of the committed oracle threshold file.
const std::vector<OracleThreshold>& oracle_thresholds();
/// Throws ConstraintViolation when no entry matches.
const OracleThreshold& oracle_threshold(std::string_view id, std::string_view space);

void to_json(nlohmann::json& j, const CheckResult& c);
void to_json(nlohmann::json& j, const ScenarioReport& r);
/// Without the runtime field; identical across runs.
nlohmann::json deterministic_json(const ScenarioReport& r);
ScenarioReport scenario_report_from_json(const nlohmann::json& j);

}  // namespace wcop

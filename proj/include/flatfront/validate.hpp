#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "flatfront/config.hpp"

namespace flatfront {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool evaluated = true;  // false: prerequisite (refinement levels) missing
  bool pass = false;
  double value = 0.0;  // headline measurement
  double bound = 0.0;  // the tolerance it is held against
  std::string detail;
};

struct ValidationOutcome {
  std::vector<CriterionResult> criteria;
  nlohmann::ordered_json report;  // criteria + diagnostics, without the determinism entry
  bool all_pass = true;
};

/// Run every acceptance measurement on the configured potential/domain and
/// assemble the diagnostics report.  The determinism criterion is checked by
/// the caller (two consecutive runs, byte-compared) since a single run cannot
/// witness it; see finalize_report.
ValidationOutcome run_validation(const RunConfig& cfg);

/// Merge the determinism check into the report of the first run and return
/// the serialized report text.
std::string finalize_report(ValidationOutcome& first, const ValidationOutcome& second);

/// Lightweight report for the build/deform commands (no refinement studies).
nlohmann::ordered_json base_report(const RunConfig& cfg);

}  // namespace flatfront

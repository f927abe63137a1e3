#pragma once

#include <string>
#include <vector>

#include "lslab/report.hpp"

namespace lslab {

struct AcceptanceOptions {
  int workers = 2;
  /// Divides every sample count (>= 1); used by the quick mode. Verdict
  /// criteria keep a floor so annuli stay populated.
  long long scale = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // one human-readable line
  Json data;           // structured numbers for the JSON report
  double seconds = 0;  // wall time; kept out of the JSON report
};

/// Runs the twelve acceptance criteria with fixed seeds and the stated
/// tolerances. Deterministic for fixed options.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// JSON report of the results. Carries no timestamps or timings, so two
/// runs with identical options serialize byte-identically.
Json acceptance_report(const std::vector<CriterionResult>& results,
                       const AcceptanceOptions& opts);

}  // namespace lslab

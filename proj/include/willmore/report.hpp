#pragma once

// Check reports. Each check carries its residual statistics, the tolerances
// it was judged against, and for failures the sample points (or exact
// coefficients) that failed. Wall time is recorded but only written out on
// request, so two runs with the same inputs serialize identically.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "willmore/minkowski.hpp"

namespace wm {

enum class CheckStatus { Pass, Fail, Skipped };
const char* checkStatusName(CheckStatus s);

struct Witness {
  std::optional<cplx> point;  // sample point, when the check is sampled
  std::string label;          // e.g. "z^4 of <P,P>", "end 3"
  double value = 0.0;
};

struct ResidualStats {
  double max = 0.0, mean = 0.0, p50 = 0.0, p90 = 0.0, p99 = 0.0;
};
// Nearest-rank quantiles; empty input gives all zeros.
ResidualStats residualStats(std::vector<double> values);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::optional<ResidualStats> stats;
  int samples = 0;
  int masked = 0;
  std::map<std::string, double> tolerances;
  std::vector<Witness> witnesses;
  std::map<std::string, std::string> notes;  // integers, verdicts, ranks
  double wallSeconds = 0.0;
};

// A sampled check: `values` per point, pass when every value is below tol.
// The worst point becomes the witness; failing points are all listed (up to 8).
CheckResult sampledCheck(const std::string& name, const std::vector<cplx>& points, const std::vector<double>& values,
                         double tol, const std::string& tolName = "max");

struct Report {
  std::string command;
  std::map<std::string, std::string> input;
  std::vector<CheckResult> checks;
  double wallSeconds = 0.0;

  bool passed() const;
};

// JSON text, keys sorted, two-space indent, trailing newline.
std::string reportJson(const Report& r, bool includeTiming = false);
// One line per check: "PASS name  max=..." etc.
std::string reportSummary(const Report& r);

}  // namespace wm

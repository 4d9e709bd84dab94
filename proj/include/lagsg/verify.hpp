#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lagsg/chart.hpp"

namespace lagsg {

// End-to-end reproduction checks on the fold example (criteria 1-12).

struct CriterionInfo {
  int id = 0;
  std::string_view name;
  std::string_view summary;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  // Sensitivity hook: scales the Z-curvature of the example, T_ZZ -> (1 + 1e-3) T_ZZ,
  // by adding 1e-3 * Z^3 / 6. The exact-residual check must then fail.
  bool perturb = false;
};

const std::vector<CriterionInfo>& verification_criteria();

// The example potential, perturbed when asked.
GeneratingFunction verification_example(const VerifyOptions& opts);

// Exceptions inside a check are caught and reported as a failure.
CriterionResult run_criterion(int id, const VerifyOptions& opts = {});
std::vector<CriterionResult> run_verification(const VerifyOptions& opts = {});

// {"perturbed": b, "passed": b, "criteria": [{"id", "name", "passed", "detail"}, ...]}
nlohmann::json verification_report(const std::vector<CriterionResult>& results, const VerifyOptions& opts);

}  // namespace lagsg

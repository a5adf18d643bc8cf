#pragma once

#include <string>
#include <vector>

namespace absorb {

// One acceptance check: numbered checks cover the cross-cutting criteria
// (1..11); id 0 marks suite-local checks (special-function fixtures and
// identities).
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::string suite;
  std::vector<CriterionResult> results;
  bool pass = true;

  std::string json() const;
  // One line per check: "[PASS|FAIL] criterion N name: measured vs tol ..."
  std::string text() const;
};

// suite in {special_functions, source_exact, features, grid,
// cross_validation, all}. Throws std::invalid_argument for unknown names.
// Numbered coverage: source_exact {1,2}, features {3,4,5,6,7,10},
// grid {11}, cross_validation {8,9}.
AcceptanceReport run_acceptance(const std::string& suite,
                                const std::string& work_dir = "acceptance_out");

}  // namespace absorb

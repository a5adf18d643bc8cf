#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace absorb {

// Raised for malformed or incomplete scenario specs (CLI exit code 2);
// compute failures keep their own exception types (exit code 1).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scenario request: which figure/sweep to produce, parameter overrides, and
// where the data files go. Specs are given as JSON ({"scenario": ...,
// "output_dir": ..., "params": {...}}) or as plain key=value lines with
// scenario= and output_dir= alongside the parameters.
struct ScenarioSpec {
  std::string scenario;
  std::string output_dir = ".";
  std::map<std::string, std::string> params;
};

ScenarioSpec parse_scenario_spec(const std::string& text);
ScenarioSpec load_scenario_spec(const std::string& path);

struct ScenarioResult {
  std::vector<std::string> files;  // data files written, in order
  std::string summary_path;
  std::string summary_json;  // also written to summary_path
};

// Runs one scenario: deterministic CSV data files plus a JSON summary of
// extracted features. The summary embeds the fully resolved spec; re-running
// from the embedded spec reproduces the outputs byte for byte. Unknown
// scenario names and bad parameter values raise SpecError.
ScenarioResult run_scenario(const ScenarioSpec& spec);

}  // namespace absorb

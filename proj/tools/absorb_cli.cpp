// Command-line front end: figure scenarios as data files, acceptance suites,
// and parameter sweeps. Exit codes: 0 pass, 1 compute error, 2 spec error,
// 3 acceptance failure.

#include <CLI11.hpp>
#include <iostream>

#include "absorb/acceptance.hpp"
#include "absorb/scenario.hpp"

namespace {

int run_spec_file(const std::string& path, const char* forced_scenario) {
  absorb::ScenarioSpec spec;
  try {
    spec = absorb::load_scenario_spec(path);
    if (forced_scenario && spec.scenario != forced_scenario) {
      throw absorb::SpecError("spec file requests scenario '" + spec.scenario +
                              "'; this subcommand runs only '" +
                              forced_scenario + "'");
    }
  } catch (const absorb::SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 2;
  }
  try {
    const absorb::ScenarioResult res = absorb::run_scenario(spec);
    for (const auto& f : res.files) std::cout << "wrote " << f << '\n';
    std::cout << "wrote " << res.summary_path << '\n';
    return 0;
  } catch (const absorb::SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "compute error in scenario '" << spec.scenario
              << "': " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"absorbing-medium wave propagation toolkit"};
  app.require_subcommand(1);

  auto* scenario = app.add_subcommand("scenario", "figure reproduction");
  scenario->require_subcommand(1);
  auto* scenario_run =
      scenario->add_subcommand("run", "run one scenario from a spec file");
  std::string spec_path;
  scenario_run->add_option("spec-file", spec_path, "JSON or key=value spec")
      ->required();

  auto* accept = app.add_subcommand("accept", "run an acceptance suite");
  std::string suite;
  accept
      ->add_option("suite", suite,
                   "special_functions | source_exact | features | grid | "
                   "cross_validation | all")
      ->required();
  std::string work_dir = "acceptance_out";
  accept->add_option("--work-dir", work_dir, "scratch dir for scenario runs");

  auto* sweep = app.add_subcommand("sweep", "run a sweep from a spec file");
  std::string sweep_path;
  sweep->add_option("spec-file", sweep_path, "JSON or key=value spec")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (scenario_run->parsed()) return run_spec_file(spec_path, nullptr);
  if (sweep->parsed()) return run_spec_file(sweep_path, "sweep");

  // accept
  try {
    const absorb::AcceptanceReport rep = absorb::run_acceptance(suite, work_dir);
    std::cout << rep.text();
    return rep.pass ? 0 : 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "compute error: " << e.what() << '\n';
    return 1;
  }
}

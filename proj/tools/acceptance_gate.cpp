// Acceptance gate: runs every suite, prints one pass/fail line per check,
// writes the machine-readable report, and exits nonzero on any failure.

#include <fstream>
#include <iostream>

#include "absorb/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string work_dir = argc > 1 ? argv[1] : "acceptance_out";
  try {
    const absorb::AcceptanceReport rep = absorb::run_acceptance("all", work_dir);
    std::cout << rep.text();
    std::ofstream os(work_dir + "/acceptance_report.json");
    if (os) os << rep.json();
    return rep.pass ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "acceptance gate error: " << e.what() << '\n';
    return 1;
  }
}

#pragma once

#include <string>
#include <vector>

namespace hcsc {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed;
  // Findings record a known discrepancy with a reference formula or value;
  // they never fail the suite.
  bool finding;
  std::string detail;
};

// Runs every invariant and property of the library on fixed seeds.
std::vector<CheckResult> run_invariant_suite();

bool suite_passed(const std::vector<CheckResult>& results);

}  // namespace hcsc

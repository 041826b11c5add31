#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace normopt {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Known suites: scalar, splitting, precompact, monotone, blocks,
/// lineability. Throws std::invalid_argument on anything else.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

/// Expands "all" to every suite, otherwise a single suite.
std::vector<SuiteResult> run_suites(const std::string& name,
                                    std::uint64_t seed);

std::vector<std::string> suite_names();

}  // namespace normopt

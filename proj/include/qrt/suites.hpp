#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qrt {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;
};

// Verification suites; names: bongartz, ar-formula, tubes, tits, singular,
// semiinv, geometry, closure, closure-singular, homdeg, oracle.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);
std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace qrt

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chq {

struct SuiteResult {
  std::string name;
  int criterion = 0;  // 0 for supporting suites
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

struct SelftestOptions {
  /// Suite names or groups ("all", "riesz", "acceptance"); empty means all.
  std::vector<std::string> suites;
  std::uint64_t seed = 20240601;
  int threads = 1;
  /// Runs the Γ suite against a Lanczos table with one coefficient nudged.
  bool perturb_gamma = false;
  std::ostream* log = nullptr;
};

/// Known suite names in run order.
std::vector<std::string> suite_names();

/// Throws Error on an unknown suite or group name.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

std::string format_result(const SuiteResult& r);

}  // namespace chq

#pragma once

// Self-verification suites run by `qent verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qent::verify {

struct CheckResult {
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;  ///< how observed is compared with tolerance
};

struct Options {
  std::uint64_t seed = 7;
  /// Negates one amplitude of the Grover input state. Used to confirm the
  /// harness reports failures.
  bool tamper = false;
};

/// Suites: all | grover | pmax | measures. ParseError on anything else.
std::vector<CheckResult> run_suite(std::string_view suite, const Options& options);

bool all_passed(const std::vector<CheckResult>& checks);

/// One human-readable line: "PASS name observed=... tol=... (detail)".
std::string describe(const CheckResult& check);

}  // namespace qent::verify

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mtd::harness {

struct Check {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const noexcept;
};

/// Suites: theorem, oracles, decomposition, correlation.
/// Throws ConfigError for an unknown name.
VerifyReport run_verify_suite(std::string_view suite, std::uint64_t seed = 1);

std::vector<std::string> verify_suite_names();

/// One JSON object per line: {"suite","check","pass","observed",...}.
void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace mtd::harness

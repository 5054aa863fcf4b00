#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace latdisc::verify {

struct Failure {
  std::string suite;
  std::string invariant;
  std::string counterexample;
};

struct Report {
  std::int64_t checks = 0;
  std::vector<Failure> failures;
};

/// Suites: geometry, transform, counting, parseval, diophantine, all.
std::vector<std::string> suite_names();

/// Runs a suite, printing one line per failure and a closing summary to out.
/// Throws InputError for an unknown suite.
Report run_suite(const std::string& name, std::uint64_t seed, std::ostream& out);

}  // namespace latdisc::verify

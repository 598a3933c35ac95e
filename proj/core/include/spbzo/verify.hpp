#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spbzo {

struct CheckResult {
  std::string name;
  bool passed = false;
  // Positive means slack; for ratio-type checks, rhs - lhs.
  double margin = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  // Multiplies R1 and R2 of every certificate before the checks run.
  double certificate_scale = 1.0;
  // Fewer samples per check; for smoke tests.
  bool quick = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  int failures() const;
  std::string to_json() const;
};

// "lemmas", "goldstein", "all"
std::vector<std::string> suite_ids();

// Throws InputError (listing the suites) for an empty or unknown id.
VerifyReport verify_suite(std::string_view suite_id, const VerifyOptions& options = {});

}  // namespace spbzo

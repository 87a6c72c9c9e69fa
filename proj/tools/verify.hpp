#pragma once

// The cross-validation battery behind `verify`: every quantity with two or
// more independent computation routes is recomputed by all of them and
// compared (exactly, or at 1e-8 relative error for the float replay of the
// sample-level binomial identity).

#include <cstdint>
#include <string>
#include <vector>

#include "json_io.hpp"

#include <wmm/moments.hpp>

namespace wmmtool {

struct VerifyOptions {
  int max_m = 4;        // longest word in the oracle triangle grid
  int max_weight = 4;   // largest |v| in the oracle triangle grid
  std::uint64_t seed = 1;
  bool selftest_corrupt = false;  // negative control: flip one coefficient
};

struct VerifySuiteResult {
  std::string name;
  long instances = 0;
  long failures = 0;
  ordered_json first_failure;  // minimal reproducer for the first mismatch
};

struct VerifySummary {
  std::vector<VerifySuiteResult> suites;
  long instances = 0;
  long failures = 0;
  bool ok() const { return failures == 0; }
};

VerifySummary run_verify(wmm::MomentEngine& engine, const VerifyOptions& options);

ordered_json verify_summary_json(const VerifySummary& summary);

}  // namespace wmmtool

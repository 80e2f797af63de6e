#pragma once

// Verification suites: each runs a fixed battery of checks at acceptance
// scale and reports one row per check. Rows are deterministic given the seed.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpsampler/pipeline.hpp"

namespace lps {

struct CheckRow {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// measured <= threshold passes.
CheckRow at_most(std::string name, double measured, double threshold);
// measured >= threshold passes.
CheckRow at_least(std::string name, double measured, double threshold);

struct SuiteReport {
  std::string suite;
  std::vector<CheckRow> rows;

  bool pass() const;
};

// gamma, cf, cdf, head, tail, sketch, end2end
const std::vector<std::string>& suite_names();

// Throws DomainError for an unknown suite name.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

// Settings the end-to-end suite and the CLI bench share with the acceptance
// tests: small enough that 1e5 full runs fit a desk budget.
struct EndToEndCase {
  std::string label;
  std::vector<std::int64_t> x;
  double p = 1.0;
};
std::vector<EndToEndCase> end_to_end_cases();
// tau 8, k 64, r 3, one instance, eps_test 0.0015, 20-bit tails at 1e-4.
SamplerConfig end_to_end_config(std::uint64_t n, double p, std::uint64_t seed);

}  // namespace lps

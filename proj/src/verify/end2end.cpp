#include <cmath>

#include "lpsampler/harness.hpp"
#include "lpsampler/pipeline.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

constexpr int kRuns = 100000;

}  // namespace

std::vector<CheckRow> end2end_suite(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  for (const EndToEndCase& c : end_to_end_cases()) {
    const std::uint64_t n = c.x.size();
    std::vector<std::uint64_t> counts(n, 0);
    int successes = 0;
    for (int run = 0; run < kRuns; ++run) {
      LpSampler sampler(end_to_end_config(n, c.p, seed + static_cast<std::uint64_t>(run)));
      for (std::uint64_t i = 0; i < n; ++i) {
        if (c.x[i] != 0) sampler.process_update(i, c.x[i]);
      }
      const SampleOutcome outcome = sampler.finalize();
      if (outcome.index) {
        ++counts[*outcome.index];
        ++successes;
      }
    }
    const std::string label = tagged(c.label + "_p", c.p);
    const std::vector<double> target = exact_lp_distribution(c.x, c.p);
    const double rate = static_cast<double>(successes) / kRuns;
    rows.push_back(at_least(label + "_success_rate", rate, 0.5));
    if (successes == 0) {
      rows.push_back({label + "_chi_square", std::nan(""), 0.0, false});
      rows.push_back({label + "_tvd", std::nan(""), 0.02, false});
      continue;
    }
    const ChiSquareResult chi = chi_square_test(counts, target, 0.01);
    rows.push_back({label + "_chi_square", chi.statistic, chi.critical, chi.pass});
    rows.push_back(at_most(label + "_tvd", total_variation(counts, target), 0.02));
  }
  return rows;
}

}  // namespace lps::verify

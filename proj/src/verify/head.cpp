#include <algorithm>
#include <cmath>

#include "lpsampler/harness.hpp"
#include "lpsampler/samplers.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

constexpr std::uint64_t kDuplication = 100000;
constexpr int kTrials = 100000;
constexpr int kHead = 20;

}  // namespace

std::vector<CheckRow> head_suite(std::uint64_t seed) {
  const RandomTape tape(seed);
  std::vector<CheckRow> rows;

  // Each head coordinate against the top-tau order statistics of k = 1e5
  // duplicated scalings.
  for (const double p : {0.5, 1.0, 1.5}) {
    const FiniteKGenerator generator(p, kDuplication, kHead);
    std::vector<std::vector<double>> produced(kHead, std::vector<double>(kTrials));
    std::vector<std::vector<double>> brute(kHead, std::vector<double>(kTrials));
    const auto instance = static_cast<std::uint64_t>(p * 2);
    for (int t = 0; t < kTrials; ++t) {
      const auto trial = static_cast<std::uint64_t>(t);
      const HeadStatistics head = sample_head(tape, instance, trial, kHead, p);
      const FiniteKSample sample = generator(tape, KeyPath().role(Role::harness).instance(instance).trial(trial));
      for (int j = 0; j < kHead; ++j) {
        produced[j][t] = head.values[j];
        brute[j][t] = sample.head[j];
      }
    }
    double worst = 0.0;
    for (int j = 0; j < kHead; ++j) worst = std::max(worst, ks_two_sample(produced[j], brute[j]));
    rows.push_back(at_most(tagged("head_marginal_ks_max_p", p), worst, 0.01));
  }

  // Max-stability: v1^-p is standard exponential.
  {
    constexpr int kDraws = 1000000;
    std::vector<double> first(kDraws);
    for (int t = 0; t < kDraws; ++t) {
      first[t] = 1.0 / sample_head(tape, 9, static_cast<std::uint64_t>(t), 2, 1.0).values[0];
    }
    std::sort(first.begin(), first.end());
    rows.push_back(at_most("max_stability_ks", ks_statistic(first, [](double x) { return -std::expm1(-x); }), 0.002));
  }

  // The Poisson-count construction agrees with arrival times above a cut.
  {
    constexpr double y0 = 0.5;
    constexpr int kDraws = 1000000;
    std::vector<double> ppp_top;
    std::vector<double> head_top;
    double count_sum = 0.0;
    for (int t = 0; t < kDraws; ++t) {
      const auto trial = static_cast<std::uint64_t>(t);
      const std::vector<double> points =
          sample_head_ppp_region(tape, KeyPath().instance(2).trial(trial), y0, 1.0);
      count_sum += static_cast<double>(points.size());
      if (!points.empty()) ppp_top.push_back(points.front());
      const double v1 = sample_head(tape, 10, trial, 2, 1.0).values[0];
      if (v1 > y0) head_top.push_back(v1);
    }
    rows.push_back(at_most("ppp_top_vs_head_ks", ks_two_sample(ppp_top, head_top), 0.01));
    rows.push_back(at_most("ppp_mean_count_rel_error", std::fabs(count_sum / kDraws / (1.0 / y0) - 1.0), 0.01));

    int empty = 0;
    constexpr int kFar = 100000;
    for (int t = 0; t < kFar; ++t) {
      const auto key = KeyPath().instance(1).trial(static_cast<std::uint64_t>(t));
      if (sample_head_ppp_region(tape, key, 1e6, 1.0).empty()) ++empty;
    }
    rows.push_back(at_least("ppp_far_cut_empty_fraction", static_cast<double>(empty) / kFar, 1.0 - 2e-6));
  }
  return rows;
}

}  // namespace lps::verify

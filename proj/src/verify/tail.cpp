#include <algorithm>
#include <cmath>

#include "lpsampler/cdf_oracle.hpp"
#include "lpsampler/harness.hpp"
#include "lpsampler/samplers.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

constexpr std::uint64_t kDuplication = 100000;
constexpr int kTrials = 100000;
constexpr int kHead = 20;
constexpr int kBits = 30;

}  // namespace

std::vector<CheckRow> tail_suite(std::uint64_t seed) {
  const RandomTape tape(seed);
  const QuadratureConfig q;
  std::vector<CheckRow> rows;

  // Self-consistency at p = 1, R = 1: draws against the oracle they invert.
  {
    const TailLaw law(1.0, 1.0);
    std::vector<double> draws(kTrials);
    double worst_residual = 0.0;
    CdfOracle check(law, q);
    for (int t = 0; t < kTrials; ++t) {
      const KeyPath key = KeyPath().role(Role::tail_uniform).trial(static_cast<std::uint64_t>(t));
      draws[t] = sample_tail_sum(tape, key, law, kBits, q).sigma_sq;
      if (t < 1000) {
        const double y = std::clamp(tape.uniform(key), 0x1.0p-40, 1.0 - 0x1.0p-40);
        worst_residual = std::max(worst_residual, std::fabs(check.evaluate(draws[t]) - y));
      }
    }
    std::sort(draws.begin(), draws.end());
    CdfOracle oracle(law, q);
    rows.push_back(at_most("tail_self_consistency_ks", ks_statistic(draws, [&](double x) { return oracle.evaluate(x); }), 0.01));
    rows.push_back(at_most("tail_inversion_residual", worst_residual, 4.0 * q.tolerance + std::ldexp(1.0, -kBits + 2)));

    // Judged by a far more accurate oracle, since F near the origin is below
    // the working tolerance.
    CdfOracle low(law, q);
    const double clamped = invert_cdf(low, 0x1.0p-40, kBits).sigma_sq;
    QuadratureConfig fine;
    fine.tolerance = 1e-13;
    CdfOracle exact(law, fine);
    rows.push_back(at_most("tail_low_clamp_cdf", exact.evaluate(clamped), 0x1.0p-39));
  }

  // Joint head and tail against finite-k duplication: production draws v
  // from sample_head and the tail from D(p, v_tau^2), the brute side keeps
  // the exact top tau and the sum of squares of the rest.
  {
    const FiniteKGenerator generator(1.0, kDuplication, kHead);
    std::vector<double> a1(kTrials), a2(kTrials), a3(kTrials);
    std::vector<double> b1(kTrials), b2(kTrials), b3(kTrials);
    for (int t = 0; t < kTrials; ++t) {
      const auto trial = static_cast<std::uint64_t>(t);
      const HeadStatistics head = sample_head(tape, 0, trial, kHead, 1.0);
      const KeyPath key = KeyPath().instance(0).coordinate(trial).role(Role::tail_uniform);
      const double sigma_sq = sample_tail_sum(tape, key, TailLaw(1.0, head.truncation), kBits, q).sigma_sq;
      a1[t] = head.values.front();
      a2[t] = head.values.front() / head.values.back();
      a3[t] = sigma_sq / head.truncation;

      const FiniteKSample brute = generator(tape, KeyPath().role(Role::harness).trial(trial));
      const double last = brute.head.back();
      b1[t] = brute.head.front();
      b2[t] = brute.head.front() / last;
      b3[t] = brute.tail_sq / (last * last);
    }
    rows.push_back(at_most("joint_v1_ks", ks_two_sample(a1, b1), 0.015));
    rows.push_back(at_most("joint_v1_over_vtau_ks", ks_two_sample(a2, b2), 0.015));
    rows.push_back(at_most("joint_tail_over_vtau_sq_ks", ks_two_sample(a3, b3), 0.015));
  }
  return rows;
}

}  // namespace lps::verify

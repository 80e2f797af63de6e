#include <algorithm>
#include <cmath>

#include "lpsampler/cdf_oracle.hpp"
#include "lpsampler/harness.hpp"
#include "lpsampler/limiting_cf.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

constexpr std::uint64_t kDuplication = 100000;
constexpr int kSamples = 1000000;
constexpr int kGrid = 50;

// Largest ratio of successive halving errors among those below 1e-2 and
// above the round-off floor, measured against the finest of 15 levels.
double halving_ratio(const TailLaw& law, double t, const QuadratureConfig& q) {
  CdfOracle oracle(law, q);
  const std::vector<double> estimates = oracle.level_estimates(t, 15);
  const double reference = estimates.back();
  double worst = 0.0;
  for (std::size_t l = 0; l + 2 < estimates.size(); ++l) {
    const double e0 = std::fabs(estimates[l] - reference);
    const double e1 = std::fabs(estimates[l + 1] - reference);
    if (e0 < 1e-2 && e0 > 1e-10) worst = std::max(worst, e1 / e0);
  }
  return worst;
}

}  // namespace

std::vector<CheckRow> cdf_suite(std::uint64_t seed) {
  const RandomTape tape(seed);
  const double ps[] = {0.5, 1.0, 1.5};
  const double rs[] = {0.05, 0.5, 1.0, 5.0};
  const QuadratureConfig q;  // tolerance 1e-6

  std::vector<CheckRow> rows;
  double worst_dip = 0.0;
  double worst_origin = 0.0;
  double worst_far = 0.0;
  int combo = 0;
  for (const double p : ps) {
    double worst_ratio = 0.0;
    for (const double r : rs) {
      const TailLaw law(p, r);
      const FiniteKGenerator generator(p, kDuplication, 0, std::pow(r, -law.s()));
      std::vector<double> samples(kSamples);
      const KeyPath base = KeyPath().role(Role::harness).instance(static_cast<std::uint64_t>(combo));
      for (int j = 0; j < kSamples; ++j) {
        samples[static_cast<std::size_t>(j)] = finite_k_tail_sum(generator, tape, base.trial(static_cast<std::uint64_t>(j)));
      }
      std::sort(samples.begin(), samples.end());

      CdfOracle oracle(law, q);
      double sup = 0.0;
      double previous = 0.0;
      for (int g = 0; g < kGrid; ++g) {
        const auto index = static_cast<std::size_t>((g + 0.5) / kGrid * kSamples);
        const double t = samples[index];
        const double f = oracle.evaluate(t);
        sup = std::max(sup, std::fabs(f - empirical_cdf(samples, t)));
        worst_dip = std::max(worst_dip, previous - f);
        previous = f;
      }
      rows.push_back(at_most(tagged(tagged("cdf_vs_finite_k_sup_p", p) + "_R", r), sup, 0.005));

      worst_origin = std::max(worst_origin, oracle.evaluate(0.0));
      worst_far = std::max(worst_far, 1.0 - oracle.evaluate(100.0 * law.mean()));
      worst_ratio = std::max(worst_ratio, halving_ratio(law, law.mean(), q));
      ++combo;
    }
    rows.push_back(at_most(tagged("halving_error_ratio_p", p), worst_ratio, 0.2));
  }
  rows.push_back(at_most("monotonicity_max_dip", worst_dip, 2.0 * q.tolerance));
  rows.push_back(at_most("cdf_at_zero", worst_origin, q.tolerance));
  rows.push_back(at_most("cdf_far_right_deficit", worst_far, 10.0 * q.tolerance));
  return rows;
}

}  // namespace lps::verify

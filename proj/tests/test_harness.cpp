#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpsampler/error.hpp"
#include "lpsampler/harness.hpp"

using namespace lps;

TEST_CASE("exact lp distribution") {
  const std::vector<std::int64_t> even{1, 1}, two_one{2, 1};
  CHECK(exact_lp_distribution(even, 0.7)[0] == doctest::Approx(0.5));
  CHECK(exact_lp_distribution(two_one, 1.0)[0] == doctest::Approx(2.0 / 3.0));
  std::vector<std::int64_t> x(16, 1);
  x[0] = 16;
  CHECK(exact_lp_distribution(x, 1.0)[0] == doctest::Approx(16.0 / 31.0));
  const std::vector<std::int64_t> zero{0, 0};
  CHECK_THROWS_AS(exact_lp_distribution(zero, 1.0), DomainError);
}

TEST_CASE("chi-square") {
  const std::vector<double> half{0.5, 0.5};
  const std::vector<std::uint64_t> exact{500, 500}, skewed{100000, 0};
  const ChiSquareResult ok = chi_square_test(exact, half, 0.01);
  CHECK(ok.statistic == 0.0);
  CHECK(ok.pass);
  CHECK_FALSE(chi_square_test(skewed, half, 0.01).pass);
  const std::vector<std::uint64_t> few{10, 10};
  CHECK_THROWS_AS(chi_square_test(few, half, 0.01), DomainError);
}

TEST_CASE("chi-square calibration") {
  // Multinomial draws from the tape pass at 0.01 in at least 98% of 1000 trials.
  const RandomTape tape(31);
  const std::vector<double> probs{0.5, 0.3, 0.2};
  int passes = 0;
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    std::vector<std::uint64_t> counts(3, 0);
    for (std::uint64_t d = 0; d < 2000; ++d) {
      const double u = tape.uniform(KeyPath().instance(rep).trial(d));
      ++counts[u < 0.5 ? 0 : (u < 0.8 ? 1 : 2)];
    }
    passes += chi_square_test(counts, probs, 0.01).pass;
  }
  CHECK(passes >= 980);
}

TEST_CASE("ks statistics") {
  const int n = 999;
  std::vector<double> quantiles(n);
  for (int i = 0; i < n; ++i) quantiles[i] = (i + 1.0) / (n + 1.0);
  auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(quantiles, uniform_cdf) <= 1.0 / n);
  const std::vector<double> constant(100, 0.5);
  CHECK(ks_statistic(constant, uniform_cdf) >= 0.5);
  CHECK(ks_two_sample({1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}) == 0.0);
  CHECK(ks_two_sample({1.0, 2.0}, {5.0, 6.0}) == 1.0);
  CHECK(empirical_cdf(quantiles, 0.5) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("total variation") {
  const std::vector<std::uint64_t> counts{30, 70};
  const std::vector<double> probs{0.5, 0.5};
  CHECK(total_variation(counts, probs) == doctest::Approx(0.2));
}

TEST_CASE("finite-k oracles") {
  const RandomTape tape(6);
  const FiniteKSample all = brute_force_finite_k(tape, KeyPath().trial(0), 1.0, 8, 8);
  CHECK(all.tail_sq == 0.0);
  CHECK(std::is_sorted(all.head.begin(), all.head.end(), std::greater<>()));

  // max-stability: head[0]^-1 is Exp(1) at p = 1
  double mean = 0.0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    mean += 1.0 / brute_force_finite_k(tape, KeyPath().instance(1).trial(static_cast<std::uint64_t>(t)), 1.0, 2000, 3)
                      .head[0];
  }
  CHECK(mean / trials == doctest::Approx(1.0).epsilon(0.08));

  const FiniteKGenerator gen(1.0, 100000, 5);
  const FiniteKSample s = gen(tape, KeyPath().trial(3));
  CHECK(s.head.size() == 5);
  CHECK(s.tail_sq >= 0.0);
  CHECK(std::is_sorted(s.head.begin(), s.head.end(), std::greater<>()));
  CHECK(gen.bulk_variance() > 0.0);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpsampler/cdf_oracle.hpp"
#include "lpsampler/error.hpp"
#include "lpsampler/samplers.hpp"

using namespace lps;

TEST_CASE("head is decreasing with R = v_tau^2") {
  const RandomTape tape(21);
  for (double p : {0.5, 1.0, 1.5}) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const HeadStatistics head = sample_head(tape, 0, i, 12, p);
      REQUIRE(head.size() == 12);
      for (std::size_t j = 1; j < head.size(); ++j) {
        CHECK(head.values[j] < head.values[j - 1]);
        CHECK(head.arrivals[j] > head.arrivals[j - 1]);
      }
      CHECK(head.truncation == head.values.back() * head.values.back());
      CHECK(head.values[0] == std::pow(head.arrivals[0], -1.0 / p));
    }
  }
  CHECK_THROWS_AS(sample_head(tape, 0, 0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(sample_head(tape, 0, 0, 4, 2.0), DomainError);
}

TEST_CASE("samplers are deterministic") {
  const RandomTape a(8), b(8);
  const HeadStatistics h1 = sample_head(a, 3, 17, 6, 1.2);
  const HeadStatistics h2 = sample_head(b, 3, 17, 6, 1.2);
  CHECK(h1.values == h2.values);
  const TailLaw law(1.2, h1.truncation);
  const QuadratureConfig q;
  const KeyPath key = KeyPath().instance(3).coordinate(17).role(Role::tail_uniform);
  CHECK(sample_tail_sum(a, key, law, 30, q).sigma_sq == sample_tail_sum(b, key, law, 30, q).sigma_sq);
}

TEST_CASE("round to bits") {
  CHECK(round_to_bits(1.0, 8) == 1.0);
  CHECK(round_to_bits(1.0 + 0x1.0p-9, 8) == 1.0);  // tie to even
  CHECK(round_to_bits(1.0 + 3 * 0x1.0p-9, 8) == 1.0 + 0x1.0p-7);
  CHECK(round_to_bits(0.0, 10) == 0.0);
  CHECK_THROWS_AS(round_to_bits(1.0, 0), DomainError);
}

TEST_CASE("tail inversion lands on the requested probability") {
  const RandomTape tape(4);
  const QuadratureConfig q;
  const int bits = 30;
  for (double p : {0.5, 1.0, 1.5}) {
    const TailLaw law(p, 0.7);
    CdfOracle check(law, q);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const KeyPath key = KeyPath().trial(t).role(Role::tail_uniform);
      const double y = std::clamp(tape.uniform(key), 0x1.0p-40, 1.0 - 0x1.0p-40);
      const double x = sample_tail_sum(tape, key, law, bits, q).sigma_sq;
      CHECK(x >= 0.0);
      CHECK(std::fabs(check.evaluate(x) - y) <= 4.0 * q.tolerance + std::ldexp(1.0, -bits + 2));
    }
  }
  CHECK_THROWS_AS(sample_tail_sum(tape, KeyPath().trial(0), TailLaw(1.0, 1.0), 7, q), DomainError);
  CHECK_THROWS_AS(sample_tail_sum(tape, KeyPath().trial(0), TailLaw(1.0, 1.0), 49, q), DomainError);
}

TEST_CASE("extreme probabilities terminate") {
  const QuadratureConfig q;
  CdfOracle low(TailLaw(1.0, 1.0), q);
  CHECK(invert_cdf(low, 0x1.0p-40, 30).sigma_sq < 0.1);
  CdfOracle high(TailLaw(1.0, 1.0), q);
  CHECK(invert_cdf(high, 1.0 - 0x1.0p-40, 30).sigma_sq > 2.0);
}

TEST_CASE("poisson region construction") {
  const RandomTape tape(2);
  const auto points = sample_head_ppp_region(tape, KeyPath().trial(0), 0.05, 1.0);
  CHECK(std::is_sorted(points.begin(), points.end(), std::greater<>()));
  for (double y : points) CHECK(y > 0.05);
  CHECK(sample_head_ppp_region(tape, KeyPath().trial(1), 1e12, 1.0).empty());
}

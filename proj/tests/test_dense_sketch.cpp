#include <doctest.h>

#include <cmath>
#include <vector>

#include "lpsampler/dense_sketch.hpp"
#include "lpsampler/error.hpp"
#include "lpsampler/samplers.hpp"

using namespace lps;

namespace {

HeadStatistics fixed_head() {
  HeadStatistics h;
  h.values = {2.0, 1.0, 0.5};
  h.arrivals = {0.5, 1.0, 2.0};
  h.truncation = 0.25;
  return h;
}

}  // namespace

TEST_CASE("virtual index encoding round-trips") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    for (int j = 0; j < 7; ++j) {
      const VirtualIndex vi{i, j};
      CHECK(decode(encode(vi, 7), 7) == vi);
    }
  }
  CHECK(encode({3, 2}, 7) == 3 * 8 + 2);  // tau + 1 slots per coordinate
}

TEST_CASE("sketch linearity and counts") {
  const RandomTape tape(9);
  const HeadStatistics head = fixed_head();
  const TailAggregate tail{0.3, 0};
  DenseSketch s(tape, 0, 16, 3, 3);
  CHECK(s.estimate_norm() == 0.0);
  CHECK(s.estimate_entry({0, 0}) == 0.0);

  s.update(5, 0.0, head, tail);
  for (int a = 0; a < 3; ++a) {
    for (double c : s.cells(a)) CHECK(c == 0.0);
  }
  s.update(5, 2.0, head, tail);
  const std::vector<double> before(s.cells(1).begin(), s.cells(1).end());
  s.update(7, 5.0, head, tail);
  s.update(7, -5.0, head, tail);
  for (int l = 0; l < 16; ++l) CHECK(std::fabs(s.cells(1)[l] - before[l]) < 1e-9);

  CHECK(s.derivations_per_update() == 3u * 16u * 4u);
  CHECK(s.derivations() == 4 * s.derivations_per_update());

  DenseSketch doubled(tape, 0, 16, 3, 3);
  doubled.update(5, 4.0, head, tail);
  CHECK(doubled.estimate_norm() == 2.0 * s.estimate_norm());

  CHECK_THROWS_AS(DenseSketch(tape, 0, 0, 3, 3), DomainError);
}

TEST_CASE("median helper") {
  std::vector<double> odd{3.0, 1.0, 2.0};
  CHECK(median_of(odd) == 2.0);
  std::vector<double> even{4.0, 1.0, 3.0, 2.0};
  CHECK(median_of(even) == 2.5);
}

TEST_CASE("single heavy entry is recovered") {
  const RandomTape tape(12);
  HeadStatistics head = fixed_head();
  head.values = {1.0, 0.0, 0.0};
  const TailAggregate none{0.0, 0};
  int close = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    DenseSketch s(tape, seed, 64, 1, 3);
    s.update(2, 1.0, head, none);
    close += std::fabs(s.estimate_entry({2, 0}) - 1.0) <= 4.0 / 8.0;
  }
  CHECK(close >= 300);
}

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lpsampler/error.hpp"
#include "lpsampler/pipeline.hpp"
#include "lpsampler/stream_file.hpp"

using namespace lps;

namespace {

SamplerConfig small(std::uint64_t n, std::uint64_t seed) {
  SamplerConfig c;
  c.n = n;
  c.p = 1.0;
  c.delta = 0.5;
  c.tau = 4;
  c.k = 32;
  c.r = 3;
  c.instances = 2;
  c.eps_test = 0.002;
  c.l_bits = 20;
  c.quadrature.tolerance = 1e-4;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("statistical test") {
  CHECK(statistical_test(1000.0, 500.0, 1.0, 0.01, 1.0).pass);
  CHECK_FALSE(statistical_test(3.0, 3.0, 1.0, 0.01, 1.0).pass);
  CHECK_FALSE(statistical_test(3.0, 0.0, 1.0, 0.01, 1.0).pass);
  CHECK(statistical_test(3.0, 0.0, 1.0, 0.01, 1.0, false).pass);
  CHECK_FALSE(statistical_test(0.0, 0.0, 0.0, 0.01, 1.0).pass);
  const TestResult r = statistical_test(10.0, 4.0, 2.0, 0.01, 1.0);
  CHECK(r.gap_margin == doctest::Approx(6.0 - 2.0));
  CHECK(r.second_margin == doctest::Approx(4.0 - 1.0));
  CHECK_THROWS_AS(statistical_test(1.0, 2.0, 1.0, 0.01, 1.0), DomainError);
}

TEST_CASE("default parameters") {
  SamplerConfig c;
  c.n = 65536;
  c.delta = 0.05;
  const SamplerConfig d = c.resolved();
  CHECK(d.tau == 48);
  CHECK(d.r == 33);
  CHECK(d.eps_test == doctest::Approx(1.0 / 1600.0));
  CHECK(d.k == 16384);
  CHECK(d.instances == 12);
  c.n = 2;
  const SamplerConfig e = c.resolved();
  CHECK(e.tau == 6);
  CHECK(e.r == 5);
  CHECK(e.k == 2048);
  c.eps_test = 0.03;
  CHECK_THROWS_AS(c.resolved(), DomainError);
  c.eps_test = 0.0;
  c.p = 2.0;
  CHECK_THROWS_AS(c.resolved(), DomainError);
}

TEST_CASE("zero stream fails") {
  LpSampler s(small(3, 1));
  const SampleOutcome out = s.finalize();
  CHECK_FALSE(out.index.has_value());
  CHECK(out.instances_tried == 2);
  s.process_update(1, 0);
  CHECK_FALSE(s.finalize().index.has_value());
}

TEST_CASE("update validation") {
  LpSampler s(small(3, 1));
  CHECK_THROWS_AS(s.process_update(3, 1), DomainError);
  CHECK_THROWS_AS(s.process_update(0, 2'000'000'000), DomainError);
}

TEST_CASE("update cost does not depend on stream position") {
  LpSampler s(small(8, 2));
  std::uint64_t previous = 0;
  for (int t = 0; t < 50; ++t) {
    s.process_update(static_cast<std::uint64_t>(t % 8), 1 + t % 3);
    CHECK(s.tape_derivations() - previous == s.derivations_per_update());
    previous = s.tape_derivations();
  }
  CHECK(s.derivations_per_update() == 2u * 3u * 32u * 5u);
  CHECK(s.tail_samples() == 16);  // once per (instance, coordinate)
}

TEST_CASE("same seed, same outcome; scaling is invisible") {
  auto run = [](std::int64_t scale, std::uint64_t seed) {
    LpSampler s(small(4, seed));
    const std::int64_t x[] = {3, -1, 4, 1};
    for (std::uint64_t i = 0; i < 4; ++i) s.process_update(i, scale * x[i]);
    return s.finalize();
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SampleOutcome a = run(1, seed);
    const SampleOutcome b = run(1, seed);
    const SampleOutcome c = run(7, seed);
    CHECK(a.index == b.index);
    CHECK(a.report.z1 == b.report.z1);
    CHECK(a.index == c.index);
  }
}

TEST_CASE("cancelled updates leave the outcome unchanged") {
  LpSampler a(small(4, 5)), b(small(4, 5));
  a.process_update(0, 5);
  b.process_update(0, 5);
  b.process_update(2, 9);
  b.process_update(2, -9);
  const InstanceReport ra = a.evaluate_instance(0), rb = b.evaluate_instance(0);
  CHECK(std::fabs(ra.z1 - rb.z1) < 1e-9);
  CHECK(std::fabs(ra.norm - rb.norm) < 1e-9);
  CHECK(ra.mu >= 0.99);
  CHECK(ra.mu <= 1.01);
}

TEST_CASE("stream files") {
  std::istringstream ok("# demo\nn=3 p=1.5\n1 4   # first\n\n3 -2\n");
  const StreamFile f = parse_stream(ok);
  CHECK(f.n == 3);
  CHECK(f.p == 1.5);
  REQUIRE(f.updates.size() == 2);
  CHECK(f.updates[0].index == 0);
  CHECK(f.updates[1].delta == -2);

  auto line_of = [](const char* text) {
    std::istringstream in(text);
    try {
      parse_stream(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("n=3 p=1\n1 1\n4 1\n") == 3);
  CHECK(line_of("n=3 p=1\n0 1\n") == 2);
  CHECK(line_of("n=3 p=1\n1 x\n") == 2);
  CHECK(line_of("n=3 p=1\n1 2000000000\n") == 2);
  CHECK(line_of("n=3 p=2\n") == 1);
  CHECK(line_of("n=3\n") == 1);
  CHECK(line_of("") == 0);
  std::istringstream empty("n=5 p=0.5\n");
  CHECK(parse_stream(empty).updates.empty());
}

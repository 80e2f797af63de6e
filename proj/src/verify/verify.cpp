#include "lpsampler/verify.hpp"

#include <algorithm>
#include <cmath>

#include "lpsampler/error.hpp"
#include "suites.hpp"

namespace lps {

CheckRow at_most(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, measured <= threshold};
}

CheckRow at_least(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, measured >= threshold};
}

bool SuiteReport::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gamma", "cf", "cdf", "head", "tail", "sketch", "end2end"};
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  SuiteReport report;
  report.suite = std::string(name);
  if (name == "gamma") {
    report.rows = verify::gamma_suite(seed);
  } else if (name == "cf") {
    report.rows = verify::cf_suite(seed);
  } else if (name == "cdf") {
    report.rows = verify::cdf_suite(seed);
  } else if (name == "head") {
    report.rows = verify::head_suite(seed);
  } else if (name == "tail") {
    report.rows = verify::tail_suite(seed);
  } else if (name == "sketch") {
    report.rows = verify::sketch_suite(seed);
  } else if (name == "end2end") {
    report.rows = verify::end2end_suite(seed);
  } else {
    throw DomainError("unknown suite: " + std::string(name));
  }
  return report;
}

std::vector<EndToEndCase> end_to_end_cases() {
  std::vector<EndToEndCase> out;
  const std::vector<std::pair<std::string, std::vector<std::int64_t>>> vectors{
      {"x11", {1, 1}},
      {"x21", {2, 1}},
      {"x1234", {1, 2, 3, 4}},
      {"x16", {16, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}},
      {"x16signed", {16, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1}},
  };
  for (const auto& [label, x] : vectors) {
    for (const double p : {0.5, 1.0, 1.5}) out.push_back({label, x, p});
  }
  return out;
}

SamplerConfig end_to_end_config(std::uint64_t n, double p, std::uint64_t seed) {
  SamplerConfig c;
  c.n = n;
  c.p = p;
  c.delta = 0.8;
  c.tau = 8;
  c.k = 64;
  c.r = 3;
  c.instances = 1;
  c.eps_test = 0.0015;
  c.l_bits = 20;
  c.quadrature.tolerance = 1e-4;
  c.seed = seed;
  return c.resolved();
}

}  // namespace lps

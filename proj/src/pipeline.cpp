#include "lpsampler/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lpsampler/error.hpp"
#include "lpsampler/limiting_cf.hpp"
#include "lpsampler/samplers.hpp"

namespace lps {

namespace {

constexpr double kEpsTestCap = 0.02;

double log2_size(std::uint64_t n) { return std::log2(static_cast<double>(std::max<std::uint64_t>(n, 4))); }

}  // namespace

SamplerConfig SamplerConfig::resolved() const {
  SamplerConfig out = *this;
  if (!(p > 0.0 && p < 2.0)) throw DomainError("config: p must lie in (0, 2)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("config: delta must lie in (0, 1)");
  if (n < 1) throw DomainError("config: n must be at least 1");
  const double lg = log2_size(n);
  const int ceil_lg = static_cast<int>(std::ceil(lg - 1e-12));
  if (out.tau == 0) out.tau = 3 * ceil_lg;
  if (out.r == 0) out.r = 2 * ceil_lg + 1;
  if (out.eps_test == 0.0) out.eps_test = std::min(kEpsTestCap, 1.0 / (400.0 * std::sqrt(lg)));
  if (out.k == 0) {
    const double scaled = 50.0 * out.eps_test;
    out.k = static_cast<int>(std::ceil(16.0 / (scaled * scaled) - 1e-9));
  }
  if (out.instances == 0) out.instances = static_cast<int>(std::ceil(4.0 * std::log(1.0 / delta) - 1e-12));
  out.instances = std::max(out.instances, 1);
  out.validate();
  return out;
}

void SamplerConfig::validate() const {
  if (n < 1) throw DomainError("config: n must be at least 1");
  if (!(p > 0.0 && p < 2.0)) throw DomainError("config: p must lie in (0, 2)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("config: delta must lie in (0, 1)");
  if (tau < 2) throw DomainError("config: tau must be at least 2");
  if (k < 1) throw DomainError("config: k must be positive");
  if (r < 1) throw DomainError("config: r must be positive");
  if (instances < 1) throw DomainError("config: instances must be positive");
  if (!(eps_test > 0.0 && eps_test <= kEpsTestCap)) throw DomainError("config: eps_test must lie in (0, 0.02]");
  if (l_bits < 8 || l_bits > 48) throw DomainError("config: L_bits must lie in [8, 48]");
  if (magnitude_bound < 1) throw DomainError("config: magnitude bound must be positive");
  if (tail_memo_budget < 1) throw DomainError("config: tail memo budget must be positive");
  quadrature.validate();
}

TestResult statistical_test(double z1, double z2, double norm, double eps_test, double mu, bool second_condition) {
  if (z1 < 0.0 || z2 < 0.0 || norm < 0.0) throw DomainError("statistical_test: inputs must be non-negative");
  if (z1 < z2) throw DomainError("statistical_test: z1 must be the larger estimate");
  TestResult result;
  result.gap_margin = (z1 - z2) - 100.0 * mu * eps_test * norm;
  result.second_margin = z2 - 50.0 * mu * eps_test * norm;
  if (norm == 0.0 && z1 == 0.0) return result;
  result.pass = result.gap_margin >= 0.0 && (!second_condition || result.second_margin >= 0.0);
  return result;
}

LpSampler::LpSampler(const SamplerConfig& config) : config_(config.resolved()), tape_(config_.seed) {
  instances_.reserve(static_cast<std::size_t>(config_.instances));
  for (int a = 0; a < config_.instances; ++a) {
    instances_.push_back({DenseSketch(tape_, static_cast<std::uint64_t>(a), config_.k, config_.r, config_.tau), {}});
  }
}

TailAggregate LpSampler::tail_for(Instance& inst, int instance, std::uint64_t index, const HeadStatistics& head) {
  if (auto it = inst.tail_memo.find(index); it != inst.tail_memo.end()) return it->second;
  // Flushing is safe: a re-drawn aggregate reads the same tape positions.
  if (inst.tail_memo.size() >= config_.tail_memo_budget) inst.tail_memo.clear();
  const KeyPath key = KeyPath().instance(static_cast<std::uint64_t>(instance)).coordinate(index).role(Role::tail_uniform);
  const TailAggregate tail =
      sample_tail_sum(tape_, key, TailLaw(config_.p, head.truncation), config_.l_bits, config_.quadrature);
  ++tail_samples_;
  inst.tail_memo.emplace(index, tail);
  return tail;
}

void LpSampler::process_update(std::uint64_t index, std::int64_t delta) {
  if (index >= config_.n) {
    throw DomainError("process_update: index " + std::to_string(index) + " outside [0, " + std::to_string(config_.n) + ")");
  }
  if (delta > config_.magnitude_bound || delta < -config_.magnitude_bound) {
    throw DomainError("process_update: |delta| exceeds the magnitude bound");
  }
  for (int a = 0; a < config_.instances; ++a) {
    Instance& inst = instances_[static_cast<std::size_t>(a)];
    const HeadStatistics head = sample_head(tape_, static_cast<std::uint64_t>(a), index, config_.tau, config_.p);
    head_derivations_ += static_cast<std::uint64_t>(config_.tau);
    const TailAggregate tail = tail_for(inst, a, index, head);
    inst.sketch.update(index, static_cast<double>(delta), head, tail);
  }
}

InstanceReport LpSampler::evaluate_instance(int instance) const {
  if (instance < 0 || instance >= config_.instances) throw DomainError("evaluate_instance: instance out of range");
  const DenseSketch& sketch = instances_[static_cast<std::size_t>(instance)].sketch;
  InstanceReport report;
  report.instance = instance;

  // Largest and second largest |estimate|; on ties the lower virtual index
  // wins, which the ascending scan gives by requiring strict improvement.
  std::vector<double> estimates(static_cast<std::size_t>(config_.tau));
  double best = -1.0;
  double second = -1.0;
  VirtualIndex best_index{};
  for (std::uint64_t i = 0; i < config_.n; ++i) {
    sketch.estimate_coordinate(i, estimates);
    for (int j = 0; j < config_.tau; ++j) {
      const double magnitude = std::fabs(estimates[static_cast<std::size_t>(j)]);
      if (magnitude > best) {
        second = best;
        best = magnitude;
        best_index = {i, j};
      } else if (magnitude > second) {
        second = magnitude;
      }
    }
  }
  report.z1 = best;
  report.z2 = std::max(second, 0.0);
  report.top = best_index;
  report.norm = sketch.estimate_norm();
  report.mu = 0.99 + 0.02 * tape_.uniform(KeyPath().instance(static_cast<std::uint64_t>(instance)).role(Role::test_jitter));
  report.test = statistical_test(report.z1, report.z2, report.norm, config_.eps_test, report.mu, config_.second_condition);
  return report;
}

SampleOutcome LpSampler::finalize() const {
  SampleOutcome outcome;
  for (int a = 0; a < config_.instances; ++a) {
    outcome.report = evaluate_instance(a);
    outcome.instances_tried = a + 1;
    if (outcome.report.test.pass) {
      outcome.index = outcome.report.top.coordinate;
      return outcome;
    }
  }
  return outcome;
}

std::uint64_t LpSampler::tape_derivations() const noexcept {
  std::uint64_t total = 0;
  for (const Instance& inst : instances_) total += inst.sketch.derivations();
  return total;
}

std::uint64_t LpSampler::derivations_per_update() const noexcept {
  return static_cast<std::uint64_t>(config_.instances) * instances_.front().sketch.derivations_per_update();
}

}  // namespace lps

#pragma once

// The perfect L_p sampler: m independent instances, each holding a dense
// sketch of the scaled duplicated vector; finalize runs the statistical test
// on the two largest head estimates and returns the first passing instance's
// coordinate.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpsampler/cdf_oracle.hpp"
#include "lpsampler/dense_sketch.hpp"
#include "lpsampler/random_tape.hpp"

namespace lps {

struct SamplerConfig {
  std::uint64_t n = 1;
  double p = 1.0;
  double delta = 0.05;  // failure probability
  // Zero means "derive from n and delta" (see resolved()).
  int tau = 0;
  int k = 0;
  int r = 0;
  int instances = 0;
  double eps_test = 0.0;
  int l_bits = 30;
  QuadratureConfig quadrature{};
  std::uint64_t seed = 0;
  // Apply the "second estimate too small" failure condition.
  bool second_condition = true;
  // Largest |delta| accepted per update.
  std::int64_t magnitude_bound = 1'000'000'000;
  // Memoized tail aggregates kept per instance before the memo is flushed.
  std::size_t tail_memo_budget = std::size_t{1} << 20;

  // Copy with every zero field replaced by its default:
  //   tau = 3 ceil(log2 max(n,4)), r = 2 ceil(log2 max(n,4)) + 1,
  //   eps_test = min(0.02, 1 / (400 sqrt(log2 max(n,4)))),
  //   k = ceil(16 / (50 eps_test)^2), instances = ceil(4 ln(1/delta)).
  // Throws DomainError if the result is invalid.
  SamplerConfig resolved() const;
  void validate() const;
};

struct TestResult {
  bool pass = false;
  double gap_margin = 0.0;     // (z1 - z2) - 100 mu eps Z
  double second_margin = 0.0;  // z2 - 50 mu eps Z
};

// Fails iff z1 - z2 < 100 mu eps Z, or z2 < 50 mu eps Z (when
// second_condition), or Z = z1 = 0.
TestResult statistical_test(double z1, double z2, double norm, double eps_test, double mu,
                            bool second_condition = true);

struct InstanceReport {
  int instance = -1;
  double z1 = 0.0;
  double z2 = 0.0;
  double norm = 0.0;
  double mu = 0.0;
  VirtualIndex top{};
  TestResult test{};
};

struct SampleOutcome {
  std::optional<std::uint64_t> index;  // 0-based coordinate, empty for failure
  InstanceReport report;               // the passing instance, else the last one tried
  int instances_tried = 0;
};

class LpSampler {
 public:
  explicit LpSampler(const SamplerConfig& config);

  const SamplerConfig& config() const noexcept { return config_; }

  // Applies x[index] += delta (0-based index). Throws DomainError for an
  // index outside [0, n) or |delta| above the magnitude bound.
  void process_update(std::uint64_t index, std::int64_t delta);

  SampleOutcome finalize() const;

  // Evaluates one instance regardless of the others.
  InstanceReport evaluate_instance(int instance) const;

  // Sketch Gaussians drawn by updates, over all instances.
  std::uint64_t tape_derivations() const noexcept;
  // m r k (tau + 1): sketch Gaussians per update.
  std::uint64_t derivations_per_update() const noexcept;
  std::uint64_t head_derivations() const noexcept { return head_derivations_; }
  std::uint64_t tail_samples() const noexcept { return tail_samples_; }

 private:
  struct Instance {
    DenseSketch sketch;
    std::unordered_map<std::uint64_t, TailAggregate> tail_memo;
  };

  TailAggregate tail_for(Instance& inst, int instance, std::uint64_t index, const HeadStatistics& head);

  SamplerConfig config_;
  RandomTape tape_;
  std::vector<Instance> instances_;
  std::uint64_t head_derivations_ = 0;
  std::uint64_t tail_samples_ = 0;
};

}  // namespace lps

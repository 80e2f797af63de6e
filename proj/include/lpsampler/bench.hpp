#pragma once

// Per-update cost of the sampler at its default parameters.

#include <cstdint>
#include <span>
#include <vector>

namespace lps {

struct BenchRow {
  std::uint64_t n = 0;
  int tau = 0;
  int k = 0;
  int r = 0;
  int instances = 0;
  int updates = 0;
  std::uint64_t derivations_total = 0;
  // Smallest and largest tape-derivation increment over single updates.
  std::uint64_t derivations_min = 0;
  std::uint64_t derivations_max = 0;
  // m r k (tau + 1)
  std::uint64_t derivations_model = 0;
  double mean_us = 0.0;
  double median_us = 0.0;
};

// Feeds `updates` random turnstile updates to a default-configured sampler
// for each n (failure probability delta) and times them one by one.
std::vector<BenchRow> run_bench(std::span<const std::uint64_t> ns, int updates, std::uint64_t seed, double delta = 0.8);

}  // namespace lps

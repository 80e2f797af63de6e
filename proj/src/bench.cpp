#include "lpsampler/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "lpsampler/error.hpp"
#include "lpsampler/pipeline.hpp"

namespace lps {

std::vector<BenchRow> run_bench(std::span<const std::uint64_t> ns, int updates, std::uint64_t seed, double delta) {
  if (updates < 1) throw DomainError("bench: updates must be positive");
  std::vector<BenchRow> rows;
  const RandomTape stream_tape(seed);
  for (const std::uint64_t n : ns) {
    SamplerConfig config;
    config.n = n;
    config.delta = delta;
    config.seed = seed;
    LpSampler sampler(config);
    const SamplerConfig& c = sampler.config();

    BenchRow row;
    row.n = n;
    row.tau = c.tau;
    row.k = c.k;
    row.r = c.r;
    row.instances = c.instances;
    row.updates = updates;
    row.derivations_model = sampler.derivations_per_update();
    row.derivations_min = ~std::uint64_t{0};
    std::vector<double> micros;
    for (int u = 0; u < updates; ++u) {
      const KeyPath key = KeyPath().role(Role::harness).coordinate(n).trial(static_cast<std::uint64_t>(u));
      const auto index = std::min<std::uint64_t>(n - 1, static_cast<std::uint64_t>(stream_tape.uniform(key.slot(0)) * n));
      const auto delta_value = static_cast<std::int64_t>(stream_tape.uniform(key.slot(1)) * 20.0) - 10;
      const std::uint64_t before = sampler.tape_derivations();
      const auto start = std::chrono::steady_clock::now();
      sampler.process_update(index, delta_value);
      const auto stop = std::chrono::steady_clock::now();
      const std::uint64_t spent = sampler.tape_derivations() - before;
      row.derivations_min = std::min(row.derivations_min, spent);
      row.derivations_max = std::max(row.derivations_max, spent);
      micros.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
    }
    row.derivations_total = sampler.tape_derivations();
    row.mean_us = std::accumulate(micros.begin(), micros.end(), 0.0) / static_cast<double>(micros.size());
    std::sort(micros.begin(), micros.end());
    const std::size_t mid = micros.size() / 2;
    row.median_us = micros.size() % 2 ? micros[mid] : 0.5 * (micros[mid - 1] + micros[mid]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lps

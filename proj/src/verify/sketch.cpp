#include <algorithm>
#include <cmath>

#include "lpsampler/dense_sketch.hpp"
#include "lpsampler/limiting_cf.hpp"
#include "lpsampler/samplers.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

constexpr int kHead = 4;
constexpr double kP = 1.0;
const std::int64_t kStream[] = {1, 2, 3, 4};

struct Coordinate {
  HeadStatistics head;
  TailAggregate tail;
};

// Heads from the production sampler; the tail aggregate is set to its mean
// since only its size matters to the sketch.
std::vector<Coordinate> coordinates(const RandomTape& tape, std::uint64_t instance) {
  std::vector<Coordinate> out;
  for (std::uint64_t i = 0; i < std::size(kStream); ++i) {
    Coordinate c;
    c.head = sample_head(tape, instance, i, kHead, kP);
    c.tail.sigma_sq = TailLaw(kP, c.head.truncation).mean();
    out.push_back(c);
  }
  return out;
}

double z_norm(const std::vector<Coordinate>& cs) {
  double sq = 0.0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double x = static_cast<double>(kStream[i]);
    double own = cs[i].tail.sigma_sq;
    for (const double v : cs[i].head.values) own += v * v;
    sq += x * x * own;
  }
  return std::sqrt(sq);
}

void ingest(DenseSketch& sketch, const std::vector<Coordinate>& cs, double scale = 1.0) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    sketch.update(i, scale * static_cast<double>(kStream[i]), cs[i].head, cs[i].tail);
  }
}

}  // namespace

std::vector<CheckRow> sketch_suite(std::uint64_t seed) {
  const RandomTape tape(seed);
  std::vector<CheckRow> rows;

  // Per-entry error and the norm estimate, k = 64 with r = 5 (k r = 320).
  {
    constexpr int kSeeds = 10000;
    constexpr int kRows = 64;
    constexpr int kReps = 5;
    const double bound = 4.0 / std::sqrt(static_cast<double>(kRows));
    std::uint64_t within = 0;
    std::uint64_t probes = 0;
    int norm_ok = 0;
    double bias_sum = 0.0;
    double second_moment = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
      const auto instance = static_cast<std::uint64_t>(s);
      const auto cs = coordinates(tape, instance);
      const double norm = z_norm(cs);
      DenseSketch sketch(tape, instance, kRows, kReps, kHead);
      ingest(sketch, cs);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        for (int j = 0; j < kHead; ++j) {
          const double truth = static_cast<double>(kStream[i]) * cs[i].head.values[j];
          const double error = sketch.estimate_repetition({i, j}, 0) - truth;
          within += std::fabs(error) <= bound * norm;
          ++probes;
          bias_sum += error / norm;
          second_moment += (error / norm) * (error / norm);
        }
      }
      const double z = sketch.estimate_norm();
      norm_ok += z >= 0.5 * norm && z <= 2.0 * norm;
    }
    const double n = static_cast<double>(probes);
    rows.push_back(at_least("entry_error_within_bound_fraction", static_cast<double>(within) / n, 0.75));
    rows.push_back(at_least("norm_two_approx_fraction", static_cast<double>(norm_ok) / kSeeds, 0.99));
    const double mean = bias_sum / n;
    const double var = second_moment / n - mean * mean;
    rows.push_back(at_most("entry_bias_z_score", std::fabs(mean) / std::sqrt(var / n), 4.0));
    rows.push_back(at_most("entry_variance_over_bound", var / (2.0 / kRows), 1.1));
  }

  // Median amplification: every head entry at once, k = 256, r = 15.
  {
    constexpr int kSeeds = 1000;
    constexpr int kRows = 256;
    const double bound = 4.0 / std::sqrt(static_cast<double>(kRows));
    int all_ok = 0;
    std::vector<double> estimates(kHead);
    for (int s = 0; s < kSeeds; ++s) {
      const auto instance = static_cast<std::uint64_t>(100000 + s);
      const auto cs = coordinates(tape, instance);
      const double norm = z_norm(cs);
      DenseSketch sketch(tape, instance, kRows, 15, kHead);
      ingest(sketch, cs);
      bool ok = true;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        sketch.estimate_coordinate(i, estimates);
        for (int j = 0; j < kHead; ++j) {
          ok = ok && std::fabs(estimates[j] - static_cast<double>(kStream[i]) * cs[i].head.values[j]) <= bound * norm;
        }
      }
      all_ok += ok;
    }
    rows.push_back(at_least("median_all_entries_fraction", static_cast<double>(all_ok) / kSeeds, 0.99));
  }

  // Linearity, cancellation and scaling under one seed.
  {
    const auto cs = coordinates(tape, 7);
    DenseSketch split(tape, 7, 64, 5, kHead);
    DenseSketch joined(tape, 7, 64, 5, kHead);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      split.update(i, 3.0, cs[i].head, cs[i].tail);
      split.update(i, static_cast<double>(kStream[i]) - 3.0, cs[i].head, cs[i].tail);
    }
    ingest(joined, cs);
    DenseSketch cancel(tape, 7, 64, 5, kHead);
    ingest(cancel, cs);
    const std::vector<double> before(cancel.cells(0).begin(), cancel.cells(0).end());
    cancel.update(1, 5.0, cs[1].head, cs[1].tail);
    cancel.update(1, -5.0, cs[1].head, cs[1].tail);
    double linear = 0.0;
    double restore = 0.0;
    for (int a = 0; a < 5; ++a) {
      for (int l = 0; l < 64; ++l) linear = std::max(linear, std::fabs(split.cells(a)[l] - joined.cells(a)[l]));
    }
    for (int l = 0; l < 64; ++l) restore = std::max(restore, std::fabs(cancel.cells(0)[l] - before[l]));
    rows.push_back(at_most("linearity_max_cell_diff", linear, 1e-9));
    rows.push_back(at_most("cancellation_max_cell_diff", restore, 1e-9));

    DenseSketch doubled(tape, 7, 64, 5, kHead);
    ingest(doubled, cs, 2.0);
    rows.push_back(at_most("norm_scale_rel_diff", std::fabs(doubled.estimate_norm() / joined.estimate_norm() - 2.0), 0.0));

    DenseSketch empty(tape, 7, 64, 5, kHead);
    rows.push_back(at_most("empty_norm", empty.estimate_norm(), 0.0));
    rows.push_back(at_most("empty_entry", std::fabs(empty.estimate_entry({0, 0})), 0.0));
  }

  // Variance of one cell after a unit update: sum_j v_j^2 + sigma^2.
  {
    constexpr int kSeeds = 100000;
    const auto cs = coordinates(tape, 3);
    double expected = cs[0].tail.sigma_sq;
    for (const double v : cs[0].head.values) expected += v * v;
    double sq = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
      DenseSketch sketch(tape, 200000 + static_cast<std::uint64_t>(s), 1, 1, kHead);
      sketch.update(0, 1.0, cs[0].head, cs[0].tail);
      sq += sketch.cells(0)[0] * sketch.cells(0)[0];
    }
    rows.push_back(at_most("unit_update_cell_variance_rel_error", std::fabs(sq / kSeeds / expected - 1.0), 0.03));
  }
  return rows;
}

}  // namespace lps::verify

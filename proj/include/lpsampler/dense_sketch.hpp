#pragma once

// Dense Gaussian CountSketch over the virtual vector z. Each original
// coordinate i owns tau head slots (z = x_i v_j) and one tail slot carrying a
// Gaussian of variance x_i^2 sigma_i^2 that stands in for the sketch of all
// its remaining scalings. Sketch columns are never stored: they are
// regenerated from the tape whenever a coordinate is touched or estimated.

#include <cstdint>
#include <span>
#include <vector>

#include "lpsampler/random_tape.hpp"
#include "lpsampler/samplers.hpp"

namespace lps {

// Position in z: coordinate i, slot j in [0, tau) for the head, tau for the tail.
struct VirtualIndex {
  std::uint64_t coordinate = 0;
  int slot = 0;

  friend bool operator==(const VirtualIndex&, const VirtualIndex&) = default;
};

// Bijection between VirtualIndex and [0, n (tau + 1)).
std::uint64_t encode(const VirtualIndex& vi, int tau);
VirtualIndex decode(std::uint64_t flat, int tau);

class DenseSketch {
 public:
  // r repetitions of k rows each. Throws DomainError unless k, r, tau >= 1.
  DenseSketch(const RandomTape& tape, std::uint64_t instance, int rows, int repetitions, int tau);

  int rows() const noexcept { return rows_; }
  int repetitions() const noexcept { return repetitions_; }
  int tau() const noexcept { return tau_; }

  // cells[a][l] += delta (sum_j g(a,l,i,j) v_j + N(a,l,i) sqrt(sigma^2)).
  void update(std::uint64_t coordinate, double delta, const HeadStatistics& head, const TailAggregate& tail);

  // (1/k) <G_column, cells[a]> for one repetition; head slots only.
  double estimate_repetition(const VirtualIndex& vi, int repetition) const;
  // Median of estimate_repetition over the repetitions.
  double estimate_entry(const VirtualIndex& vi) const;
  // Median estimates of every head slot of one coordinate (out.size() == tau).
  void estimate_coordinate(std::uint64_t coordinate, std::span<double> out) const;

  // (5/4) median of |cell| over all r k cells.
  double estimate_norm() const;

  std::span<const double> cells(int repetition) const;

  // Gaussians drawn by updates so far. Estimation regenerates columns too but
  // is not counted, and is safe to call concurrently once updates stop.
  std::uint64_t derivations() const noexcept { return derivations_; }
  // Gaussians one update draws: r k (tau + 1).
  std::uint64_t derivations_per_update() const noexcept;

 private:
  KeyPath column_key(std::uint64_t coordinate, int repetition, int slot) const;

  RandomTape tape_;
  std::uint64_t instance_;
  int rows_;
  int repetitions_;
  int tau_;
  std::vector<double> cells_;
  std::uint64_t derivations_ = 0;
  std::vector<double> scratch_;
  std::vector<double> column_;
};

// Median of a small sample (mean of the middle pair when the size is even).
double median_of(std::span<double> values);

}  // namespace lps

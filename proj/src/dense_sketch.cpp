#include "lpsampler/dense_sketch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpsampler/error.hpp"

namespace lps {

std::uint64_t encode(const VirtualIndex& vi, int tau) {
  if (tau < 1 || vi.slot < 0 || vi.slot > tau) throw DomainError("virtual index: slot out of range");
  const auto width = static_cast<std::uint64_t>(tau) + 1;
  if (vi.coordinate > (std::numeric_limits<std::uint64_t>::max() - static_cast<std::uint64_t>(vi.slot)) / width) {
    throw DomainError("virtual index: coordinate too large");
  }
  return vi.coordinate * width + static_cast<std::uint64_t>(vi.slot);
}

VirtualIndex decode(std::uint64_t flat, int tau) {
  if (tau < 1) throw DomainError("virtual index: tau must be positive");
  const auto width = static_cast<std::uint64_t>(tau) + 1;
  return {flat / width, static_cast<int>(flat % width)};
}

double median_of(std::span<double> values) {
  if (values.empty()) throw DomainError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

DenseSketch::DenseSketch(const RandomTape& tape, std::uint64_t instance, int rows, int repetitions, int tau)
    : tape_(tape), instance_(instance), rows_(rows), repetitions_(repetitions), tau_(tau) {
  if (rows < 1 || repetitions < 1 || tau < 1) {
    throw DomainError("dense sketch needs positive rows, repetitions and head size");
  }
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(repetitions), 0.0);
  scratch_.resize(static_cast<std::size_t>(rows));
  column_.resize(static_cast<std::size_t>(rows));
}

KeyPath DenseSketch::column_key(std::uint64_t coordinate, int repetition, int slot) const {
  const KeyPath base = KeyPath().instance(instance_).coordinate(coordinate).repetition(static_cast<std::uint64_t>(repetition));
  if (slot == tau_) return base.role(Role::tail_gaussian);
  return base.role(Role::sketch_gaussian).slot(static_cast<std::uint64_t>(slot));
}

std::uint64_t DenseSketch::derivations_per_update() const noexcept {
  return static_cast<std::uint64_t>(repetitions_) * static_cast<std::uint64_t>(rows_) *
         (static_cast<std::uint64_t>(tau_) + 1);
}

void DenseSketch::update(std::uint64_t coordinate, double delta, const HeadStatistics& head,
                         const TailAggregate& tail) {
  if (static_cast<int>(head.size()) != tau_) throw DomainError("dense sketch: head size does not match tau");
  if (!(tail.sigma_sq >= 0.0)) throw DomainError("dense sketch: negative tail aggregate");
  const double tail_scale = std::sqrt(tail.sigma_sq);
  for (int a = 0; a < repetitions_; ++a) {
    std::fill(column_.begin(), column_.end(), 0.0);
    for (int j = 0; j <= tau_; ++j) {
      const double weight = j < tau_ ? head.values[static_cast<std::size_t>(j)] : tail_scale;
      tape_.fill_gaussians(column_key(coordinate, a, j), scratch_);
      for (int l = 0; l < rows_; ++l) column_[static_cast<std::size_t>(l)] += weight * scratch_[static_cast<std::size_t>(l)];
    }
    double* cells = cells_.data() + static_cast<std::size_t>(a) * static_cast<std::size_t>(rows_);
    for (int l = 0; l < rows_; ++l) cells[l] += delta * column_[static_cast<std::size_t>(l)];
  }
  derivations_ += derivations_per_update();
}

double DenseSketch::estimate_repetition(const VirtualIndex& vi, int repetition) const {
  if (vi.slot < 0 || vi.slot >= tau_) throw DomainError("estimate_entry: only head slots have explicit columns");
  if (repetition < 0 || repetition >= repetitions_) throw DomainError("estimate_entry: repetition out of range");
  std::vector<double> column(static_cast<std::size_t>(rows_));
  tape_.fill_gaussians(column_key(vi.coordinate, repetition, vi.slot), column);
  const double* cells = cells_.data() + static_cast<std::size_t>(repetition) * static_cast<std::size_t>(rows_);
  double dot = 0.0;
  for (int l = 0; l < rows_; ++l) dot += column[static_cast<std::size_t>(l)] * cells[l];
  return dot / rows_;
}

double DenseSketch::estimate_entry(const VirtualIndex& vi) const {
  std::vector<double> per_repetition(static_cast<std::size_t>(repetitions_));
  for (int a = 0; a < repetitions_; ++a) per_repetition[static_cast<std::size_t>(a)] = estimate_repetition(vi, a);
  return median_of(per_repetition);
}

void DenseSketch::estimate_coordinate(std::uint64_t coordinate, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(tau_)) throw DomainError("estimate_coordinate: output must hold tau values");
  std::vector<double> per_repetition(static_cast<std::size_t>(repetitions_));
  for (int j = 0; j < tau_; ++j) {
    for (int a = 0; a < repetitions_; ++a) {
      per_repetition[static_cast<std::size_t>(a)] = estimate_repetition({coordinate, j}, a);
    }
    out[static_cast<std::size_t>(j)] = median_of(per_repetition);
  }
}

double DenseSketch::estimate_norm() const {
  std::vector<double> magnitudes(cells_.size());
  std::transform(cells_.begin(), cells_.end(), magnitudes.begin(), [](double c) { return std::fabs(c); });
  return 1.25 * median_of(magnitudes);
}

std::span<const double> DenseSketch::cells(int repetition) const {
  if (repetition < 0 || repetition >= repetitions_) throw DomainError("cells: repetition out of range");
  return {cells_.data() + static_cast<std::size_t>(repetition) * static_cast<std::size_t>(rows_),
          static_cast<std::size_t>(rows_)};
}

}  // namespace lps

#pragma once

// Deterministic, hierarchically keyed randomness.
//
// Every random variable the sampler consumes is a pure function of the master
// seed and a key path naming it (instance, coordinate, role, repetition, slot,
// row, trial). The key path is packed injectively into the 256-bit counter of a
// Philox4x64-10 block cipher keyed by the seed, so distinct paths never share a
// stream position and any value can be regenerated on demand.

#include <array>
#include <cstdint>
#include <span>

namespace lps {

enum class Role : std::uint8_t {
  head_exponential = 1,
  tail_uniform = 2,
  sketch_gaussian = 3,
  tail_gaussian = 4,
  test_jitter = 5,
  ppp_count = 6,
  ppp_location = 7,
  harness = 8,
  harness_aux = 9,
};

enum class Label : std::uint8_t { role, instance, coordinate, repetition, slot, row, trial };

// Key path: each label may be set at most once. Field widths:
//   coordinate 64 bits, row 32, slot 32, repetition 32, instance 32,
//   trial 56, role 8.
class KeyPath {
 public:
  using Counter = std::array<std::uint64_t, 4>;

  KeyPath() = default;

  // Returns a copy with `label` set to `index`. Throws DomainError if the
  // label is already set or the index does not fit its field.
  [[nodiscard]] KeyPath with(Label label, std::uint64_t index) const;

  [[nodiscard]] KeyPath role(Role r) const { return with(Label::role, static_cast<std::uint64_t>(r)); }
  [[nodiscard]] KeyPath instance(std::uint64_t a) const { return with(Label::instance, a); }
  [[nodiscard]] KeyPath coordinate(std::uint64_t i) const { return with(Label::coordinate, i); }
  [[nodiscard]] KeyPath repetition(std::uint64_t a) const { return with(Label::repetition, a); }
  [[nodiscard]] KeyPath slot(std::uint64_t j) const { return with(Label::slot, j); }
  [[nodiscard]] KeyPath row(std::uint64_t l) const { return with(Label::row, l); }
  [[nodiscard]] KeyPath trial(std::uint64_t t) const { return with(Label::trial, t); }

  bool has(Label label) const noexcept { return (used_ >> static_cast<unsigned>(label)) & 1u; }
  // Bit mask of the labels set.
  std::uint8_t labels() const noexcept { return used_; }
  const Counter& counter() const noexcept { return words_; }

  friend bool operator==(const KeyPath&, const KeyPath&) = default;

 private:
  Counter words_{};
  std::uint8_t used_ = 0;
};

// Philox4x64 with 10 rounds.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) noexcept;

// Inverse of the standard normal CDF (Wichura's AS241, ~1e-16 relative).
double normal_quantile(double u) noexcept;

// Maps 64 random bits to (k + 1/2) * 2^-53, strictly inside (0, 1). The top
// value rounds to 1 in double precision and is pulled back by one ulp.
inline double bits_to_unit(std::uint64_t bits) noexcept {
  const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  return u < 1.0 ? u : 0x1.fffffffffffffp-1;
}

class RandomTape {
 public:
  static constexpr double kGaussianClamp = 12.0;

  explicit RandomTape(std::uint64_t master_seed) noexcept : seed_(master_seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  // The cipher block at the key's counter, untouched.
  std::array<std::uint64_t, 4> raw(const KeyPath& key) const noexcept;

  // Uniform in (0, 1), 53 significant bits. Rows share cipher blocks: row l
  // reads lane l % 4 of the block whose row field is l / 4.
  double uniform(const KeyPath& key) const noexcept;

  // Standard normal by inversion, clamped to +-12.
  double gaussian(const KeyPath& key) const noexcept;

  // Standard exponential, -ln(uniform).
  double exponential(const KeyPath& key) const noexcept;

  // out[l] = uniform(base.row(l)) for every l; `base` must not set the row.
  void fill_uniforms(const KeyPath& base, std::span<double> out) const;

  // out[l] = gaussian(base.row(l)) for every l; `base` must not set the row.
  void fill_gaussians(const KeyPath& base, std::span<double> out) const;

 private:
  std::uint64_t seed_;
};

}  // namespace lps

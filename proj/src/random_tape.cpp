#include "lpsampler/random_tape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpsampler/error.hpp"

namespace lps {

namespace {

struct FieldSpec {
  unsigned word;
  unsigned shift;
  unsigned bits;
};

constexpr FieldSpec field_of(Label label) {
  switch (label) {
    case Label::coordinate: return {0, 0, 64};
    case Label::row: return {1, 0, 32};
    case Label::slot: return {1, 32, 32};
    case Label::repetition: return {2, 0, 32};
    case Label::instance: return {2, 32, 32};
    case Label::trial: return {3, 0, 56};
    case Label::role: return {3, 56, 8};
  }
  return {0, 0, 0};
}

const char* label_name(Label label) {
  switch (label) {
    case Label::coordinate: return "coordinate";
    case Label::row: return "row";
    case Label::slot: return "slot";
    case Label::repetition: return "repetition";
    case Label::instance: return "instance";
    case Label::trial: return "trial";
    case Label::role: return "role";
  }
  return "?";
}

constexpr std::uint64_t kKeyTag = 0x4c705361'6d706c65ULL;

// The label mask goes into the cipher key, so paths that set different
// labels never meet even when their packed counters agree (row 0 against
// an unset row, say).
constexpr std::uint64_t key_word(std::uint8_t labels) { return kKeyTag ^ labels; }

constexpr std::uint8_t kRowBit = 1u << static_cast<unsigned>(Label::row);

__extension__ typedef unsigned __int128 u128;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const u128 product = static_cast<u128>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

using Block = std::array<std::uint64_t, 4>;

constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

inline void philox_round(Block& c, std::uint64_t k0, std::uint64_t k1) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kM0, c[0], hi0, lo0);
  mulhilo(kM1, c[2], hi1, lo1);
  c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

inline void philox_rounds(Block& a, std::uint64_t k0, std::uint64_t k1) {
#pragma GCC unroll 10
  for (int round = 0; round < 10; ++round) {
    philox_round(a, k0, k1);
    k0 += kW0;
    k1 += kW1;
  }
}

// Two independent blocks per pass keep both multipliers busy.
inline void philox_rounds(Block& a, Block& b, std::uint64_t k0, std::uint64_t k1) {
#pragma GCC unroll 10
  for (int round = 0; round < 10; ++round) {
    philox_round(a, k0, k1);
    philox_round(b, k0, k1);
    k0 += kW0;
    k1 += kW1;
  }
}

}  // namespace

KeyPath KeyPath::with(Label label, std::uint64_t index) const {
  const auto bit = static_cast<std::uint8_t>(1u << static_cast<unsigned>(label));
  if (used_ & bit) {
    throw DomainError(std::string("key path label set twice: ") + label_name(label));
  }
  const FieldSpec f = field_of(label);
  if (f.bits < 64 && index >> f.bits) {
    throw DomainError(std::string("key path index overflows field: ") + label_name(label));
  }
  KeyPath out = *this;
  out.words_[f.word] |= index << f.shift;
  out.used_ |= bit;
  return out;
}

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) noexcept {
  Block a = counter;
  philox_rounds(a, key[0], key[1]);
  return a;
}

double normal_quantile(double u) noexcept {
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
             45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
          133.14166789178437745) * r + 3.387132872796366608);
    const double den =
        (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
             21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
    return q * num / den;
  }
  double r = q < 0 ? u : 1.0 - u;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
            1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
          4.6303378461565452959) * r + 1.42343711074968357734) /
        (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
             0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
          2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
            0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
          5.4637849111641143699) * r + 6.6579046435011037772) /
        (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
             7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
          0.59983220655588793769) * r + 1.0);
  }
  return q < 0 ? -x : x;
}

std::array<std::uint64_t, 4> RandomTape::raw(const KeyPath& key) const noexcept {
  return philox4x64(key.counter(), {seed_, key_word(key.labels())});
}

double RandomTape::uniform(const KeyPath& key) const noexcept {
  std::array<std::uint64_t, 4> counter = key.counter();
  const std::uint64_t row = counter[1] & 0xffffffffULL;
  counter[1] = (counter[1] & ~0xffffffffULL) | (row >> 2);
  return bits_to_unit(philox4x64(counter, {seed_, key_word(key.labels())})[row & 3]);
}

double RandomTape::gaussian(const KeyPath& key) const noexcept {
  return std::clamp(normal_quantile(uniform(key)), -kGaussianClamp, kGaussianClamp);
}

double RandomTape::exponential(const KeyPath& key) const noexcept { return -std::log(uniform(key)); }

void RandomTape::fill_uniforms(const KeyPath& base, std::span<double> out) const {
  if (base.has(Label::row)) {
    throw DomainError("fill_uniforms: base key already fixes the row");
  }
  if (out.size() > (std::uint64_t{1} << 32)) {
    throw DomainError("fill_uniforms: too many rows");
  }
  const Block counter = base.counter();
  const std::uint64_t key = key_word(base.labels() | kRowBit);
  const std::size_t blocks = (out.size() + 3) / 4;
  auto store = [&](const Block& block, std::size_t b) {
    const std::size_t first = 4 * b;
    const std::size_t count = std::min<std::size_t>(4, out.size() - first);
    for (std::size_t lane = 0; lane < count; ++lane) out[first + lane] = bits_to_unit(block[lane]);
  };
  std::size_t b = 0;
  for (; b + 1 < blocks; b += 2) {
    Block x = counter;
    Block y = counter;
    x[1] |= b;
    y[1] |= b + 1;
    philox_rounds(x, y, seed_, key);
    store(x, b);
    store(y, b + 1);
  }
  if (b < blocks) {
    Block x = counter;
    x[1] |= b;
    philox_rounds(x, seed_, key);
    store(x, b);
  }
}

void RandomTape::fill_gaussians(const KeyPath& base, std::span<double> out) const {
  fill_uniforms(base, out);
  for (double& v : out) v = std::clamp(normal_quantile(v), -kGaussianClamp, kGaussianClamp);
}

}  // namespace lps

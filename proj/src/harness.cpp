#include "lpsampler/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "lpsampler/error.hpp"

namespace lps {

namespace {

constexpr std::size_t kChunk = 64;
constexpr std::uint64_t kBulkSlot = 0xffffffffULL;

void require_exponent(double p, const char* who) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError(std::string(who) + ": p must lie in (0, 2)");
}

// Standard exponentials read from the tape in blocks keyed by slot.
class ExponentialStream {
 public:
  ExponentialStream(const RandomTape& tape, const KeyPath& base) : tape_(tape), base_(base) {}

  double next() {
    if (used_ == kChunk) refill();
    return -std::log(buffer_[used_++]);
  }

 private:
  void refill() {
    tape_.fill_uniforms(base_.slot(chunk_++), buffer_);
    used_ = 0;
  }

  const RandomTape& tape_;
  KeyPath base_;
  std::array<double, kChunk> buffer_{};
  std::size_t used_ = kChunk;
  std::uint64_t chunk_ = 0;
};

}  // namespace

FiniteKSample brute_force_finite_k(const RandomTape& tape, const KeyPath& base, double p, std::uint64_t k, int tau,
                                   double lambda) {
  require_exponent(p, "brute_force_finite_k");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("brute_force_finite_k: lambda must be non-negative");
  if (tau < 0 || k < static_cast<std::uint64_t>(tau)) throw DomainError("brute_force_finite_k: need 0 <= tau <= k");
  if (k > (std::uint64_t{1} << 32)) throw DomainError("brute_force_finite_k: k too large");
  std::vector<double> e(k);
  tape.fill_uniforms(base, e);
  for (double& x : e) x = -std::log(x);
  const auto top = static_cast<std::ptrdiff_t>(tau);
  std::nth_element(e.begin(), e.begin() + top, e.end());
  std::sort(e.begin(), e.begin() + top);

  const double kd = static_cast<double>(k);
  FiniteKSample out;
  out.k = k;
  out.head.reserve(static_cast<std::size_t>(tau));
  for (std::ptrdiff_t j = 0; j < top; ++j) out.head.push_back(std::pow(lambda + kd * e[static_cast<std::size_t>(j)], -1.0 / p));
  for (std::size_t j = static_cast<std::size_t>(tau); j < e.size(); ++j) out.tail_sq += std::pow(lambda + kd * e[j], -2.0 / p);
  return out;
}

FiniteKGenerator::FiniteKGenerator(double p, std::uint64_t k, int tau, double lambda, double cut)
    : p_(p), k_(k), tau_(tau), lambda_(lambda), cut_(cut) {
  require_exponent(p, "FiniteKGenerator");
  if (tau < 0 || k < static_cast<std::uint64_t>(tau)) throw DomainError("FiniteKGenerator: need 0 <= tau <= k");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("FiniteKGenerator: lambda must be non-negative");
  if (!(cut > 0.0)) throw DomainError("FiniteKGenerator: cut must be positive");
  if (lambda == 0.0 && cut < 1.0) throw DomainError("FiniteKGenerator: cut below 1 without an offset");

  const double a = lambda + cut;
  const double kd = static_cast<double>(k);
  boost::math::quadrature::exp_sinh<double> integrator;
  auto moment = [&](double q) {
    auto f = [&](double x) { return std::pow(a + kd * x, -q) * std::exp(-x); };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
  };
  m1_ = moment(2.0 / p);
  m2_ = moment(4.0 / p);
}

FiniteKSample FiniteKGenerator::operator()(const RandomTape& tape, const KeyPath& base) const {
  FiniteKSample out;
  out.k = k_;
  out.head.reserve(static_cast<std::size_t>(tau_));
  ExponentialStream stream(tape, base);
  const double kd = static_cast<double>(k_);
  const double tail_power = -2.0 / p_;

  // w_j = k e_(j): ordered, with e_(j) - e_(j-1) ~ Exp(1) / (k - j + 1).
  double w = 0.0;
  std::uint64_t j = 0;
  bool exact = false;
  while (j < k_) {
    w += stream.next() * kd / static_cast<double>(k_ - j);
    // Below the cut everything is exact. Past it, stop unless the head is
    // still short, in which case the rest of the sequence is run out too.
    if (w >= cut_ && !exact) {
      if (j >= static_cast<std::uint64_t>(tau_)) break;
      exact = true;
    }
    ++j;
    const double shifted = lambda_ + w;
    if (j <= static_cast<std::uint64_t>(tau_)) {
      out.head.push_back(std::pow(shifted, -1.0 / p_));
    } else {
      out.tail_sq += std::pow(shifted, tail_power);
    }
  }
  if (!exact && j < k_) {
    const double remaining = static_cast<double>(k_ - j);
    const double mean = remaining * m1_;
    const double sd = std::sqrt(std::max(remaining * (m2_ - m1_ * m1_), 0.0));
    out.tail_sq += std::max(mean + sd * tape.gaussian(base.slot(kBulkSlot)), 0.0);
  }
  return out;
}

double finite_k_tail_sum(const FiniteKGenerator& generator, const RandomTape& tape, const KeyPath& base) {
  return generator(tape, base).tail_sq;
}

std::vector<double> exact_lp_distribution(std::span<const std::int64_t> x, double p) {
  require_exponent(p, "exact_lp_distribution");
  std::vector<double> q(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    q[i] = x[i] == 0 ? 0.0 : std::pow(std::fabs(static_cast<double>(x[i])), p);
  }
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  if (total == 0.0) throw DomainError("exact_lp_distribution: x is all zero");
  for (double& v : q) v /= total;
  return q;
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> probs,
                                double significance) {
  if (counts.size() != probs.size() || counts.empty()) throw DomainError("chi_square_test: size mismatch");
  if (!(significance > 0.0 && significance < 1.0)) throw DomainError("chi_square_test: significance must lie in (0, 1)");
  double n = 0.0;
  double min_prob = 1.0;
  int categories = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] < 0.0) throw DomainError("chi_square_test: negative probability");
    n += static_cast<double>(counts[i]);
    if (probs[i] > 0.0) {
      min_prob = std::min(min_prob, probs[i]);
      ++categories;
    }
  }
  if (categories == 0) throw DomainError("chi_square_test: no category has positive probability");
  if (n < 50.0 / min_prob) throw DomainError("chi_square_test: expected counts too small");

  ChiSquareResult out;
  out.dof = categories - 1;
  bool impossible = false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] == 0.0) {
      impossible = impossible || counts[i] > 0;
      continue;
    }
    const double expected = n * probs[i];
    const double diff = static_cast<double>(counts[i]) - expected;
    out.statistic += diff * diff / expected;
  }
  if (impossible) {
    out.statistic = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    return out;
  }
  if (out.dof == 0) {
    out.p_value = 1.0;
    out.pass = true;
    return out;
  }
  const boost::math::chi_squared_distribution<double> law(out.dof);
  out.critical = boost::math::quantile(boost::math::complement(law, significance));
  out.p_value = boost::math::cdf(boost::math::complement(law, out.statistic));
  out.pass = out.statistic <= out.critical;
  return out;
}

double ks_statistic(std::span<const double> sorted_samples, const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) throw DomainError("ks_statistic: no samples");
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max({d, std::fabs(f - static_cast<double>(i + 1) / n), std::fabs(f - static_cast<double>(i) / n)});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double empirical_cdf(std::span<const double> sorted_samples, double x) {
  if (sorted_samples.empty()) throw DomainError("empirical_cdf: no samples");
  const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  return static_cast<double>(it - sorted_samples.begin()) / static_cast<double>(sorted_samples.size());
}

double total_variation(std::span<const std::uint64_t> counts, std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.empty()) throw DomainError("total_variation: size mismatch");
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (n == 0.0) throw DomainError("total_variation: no counts");
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) sum += std::fabs(static_cast<double>(counts[i]) / n - probs[i]);
  return 0.5 * sum;
}

}  // namespace lps

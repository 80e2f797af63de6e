#include "lpsampler/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "lpsampler/error.hpp"

namespace lps {

namespace {

constexpr int kBracketDoublings = 60;
constexpr int kSearchIterations = 200;
constexpr double kProbabilityClamp = 0x1.0p-40;
// Poisson counts are drawn by sequential inversion, which needs e^-mean to
// stay representable.
constexpr double kMaxPoissonMean = 700.0;

void require_exponent(double p, const char* who) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError(std::string(who) + ": p must lie in (0, 2)");
}

}  // namespace

HeadStatistics sample_head(const RandomTape& tape, const KeyPath& base, int tau, double p) {
  require_exponent(p, "sample_head");
  if (tau < 2) throw DomainError("sample_head: tau must be at least 2");
  HeadStatistics head;
  head.arrivals.resize(static_cast<std::size_t>(tau));
  head.values.resize(static_cast<std::size_t>(tau));
  double gamma = 0.0;
  for (int j = 0; j < tau; ++j) {
    gamma += tape.exponential(base.slot(static_cast<std::uint64_t>(j)));
    head.arrivals[static_cast<std::size_t>(j)] = gamma;
    head.values[static_cast<std::size_t>(j)] = std::pow(gamma, -1.0 / p);
  }
  const double last = head.values.back();
  head.truncation = last * last;
  return head;
}

HeadStatistics sample_head(const RandomTape& tape, std::uint64_t instance, std::uint64_t coordinate, int tau,
                           double p) {
  return sample_head(tape, KeyPath().instance(instance).coordinate(coordinate).role(Role::head_exponential), tau, p);
}

std::vector<double> sample_head_ppp_region(const RandomTape& tape, const KeyPath& base, double y0, double p) {
  require_exponent(p, "sample_head_ppp_region");
  if (!(y0 > 0.0) || !std::isfinite(y0)) throw DomainError("sample_head_ppp_region: y0 must be positive");
  const double mean = std::pow(y0, -p);
  if (mean > kMaxPoissonMean) throw DomainError("sample_head_ppp_region: y0^-p too large for count inversion");

  const double u = tape.uniform(base.role(Role::ppp_count));
  std::uint64_t count = 0;
  double mass = std::exp(-mean);
  double cumulative = mass;
  while (u > cumulative && mass > 0.0) {
    ++count;
    mass *= mean / static_cast<double>(count);
    cumulative += mass;
  }

  std::vector<double> points(count);
  const KeyPath locations = base.role(Role::ppp_location);
  tape.fill_uniforms(locations, points);
  for (double& y : points) y = y0 * std::pow(y, -1.0 / p);
  std::sort(points.begin(), points.end(), std::greater<>());
  return points;
}

double round_to_bits(double x, int bits) {
  if (bits < 1 || bits > 53) throw DomainError("round_to_bits: bits must lie in [1, 53]");
  if (x == 0.0 || !std::isfinite(x)) return x;
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // in [0.5, 1)
  // nearbyint honours the default round-half-to-even mode.
  const double scaled = std::nearbyint(std::ldexp(mantissa, bits));
  return std::ldexp(scaled, exponent - bits);
}

TailAggregate invert_cdf(CdfOracle& oracle, double y, int l_bits) {
  if (l_bits < 8 || l_bits > 48) throw DomainError("sample_tail_sum: L_bits must lie in [8, 48]");
  if (!(y > 0.0 && y < 1.0)) throw DomainError("sample_tail_sum: probability must lie in (0, 1)");
  TailAggregate out;
  int levels = 0;
  auto evaluate = [&](double x) {
    ++out.cdf_evaluations;
    // Later points use at least as many mesh levels as any earlier one, so
    // the search mostly sees one fixed quadrature rule.
    const CdfPoint point = oracle.evaluate_point(x, levels);
    levels = std::max(levels, point.levels);
    return point;
  };

  // Computed F levels off within the tolerance of 1, possibly below y.
  y = std::min(y, 1.0 - oracle.config().tolerance);
  double lo = 0.0;
  double hi = oracle.law().mean();
  const double floor = std::ldexp(hi, -60);
  CdfPoint at = evaluate(hi);
  int doublings = 0;
  while (at.cdf < y) {
    if (++doublings > kBracketDoublings) {
      throw ConvergenceError("sample_tail_sum: bracket cap exceeded", lo, hi);
    }
    lo = hi;
    hi *= 2.0;
    at = evaluate(hi);
  }

  // Newton on the fixed-rule F, falling back to bisection whenever a step
  // leaves the bracket or fails to halve the previous step. Newton tends to
  // approach from one side, so once its step is below the target width the
  // root is straddled by two probes.
  double x = hi;
  double last_step = hi - lo;
  for (int iteration = 0;; ++iteration) {
    if (iteration >= kSearchIterations) {
      throw ConvergenceError("sample_tail_sum: quantile search did not narrow the bracket", lo, hi);
    }
    // Width is relative, with a floor far below any mass of the law so a
    // quantile in the noise near the origin still terminates.
    if (hi - lo <= std::ldexp(std::max(lo, floor), -l_bits)) break;

    double candidate = 0.5 * (lo + hi);
    bool newton = false;
    if (at.density > 0.0) {
      const double step = x - (at.cdf - y) / at.density;
      if (step > lo && step < hi && std::fabs(step - x) <= 0.5 * last_step) {
        candidate = step;
        newton = true;
      }
    }
    last_step = newton ? std::fabs(candidate - x) : 0.5 * (hi - lo);

    const double tol = std::ldexp(std::max(lo, candidate), -l_bits);
    if (newton && last_step < 0.5 * tol) {
      // x is already a bracket end; probe just beyond the Newton point on the
      // far side so that one evaluation closes the bracket.
      const double probe = candidate < x ? candidate - 0.45 * tol : candidate + 0.45 * tol;
      if (probe > lo && probe < hi) candidate = probe;
      at = evaluate(candidate);
      x = candidate;
      if (at.cdf < y) {
        lo = candidate;
      } else {
        hi = candidate;
      }
      last_step = hi - lo;
    } else {
      at = evaluate(candidate);
      x = candidate;
      if (at.cdf < y) {
        lo = candidate;
      } else {
        hi = candidate;
      }
    }
  }
  out.sigma_sq = round_to_bits(0.5 * (lo + hi), l_bits);
  return out;
}

TailAggregate sample_tail_sum(const RandomTape& tape, const KeyPath& key, const TailLaw& law, int l_bits,
                              const QuadratureConfig& q) {
  if (l_bits < 8 || l_bits > 48) throw DomainError("sample_tail_sum: L_bits must lie in [8, 48]");
  const double y = std::clamp(tape.uniform(key), kProbabilityClamp, 1.0 - kProbabilityClamp);
  CdfOracle oracle(law, q);
  return invert_cdf(oracle, y, l_bits);
}

}  // namespace lps

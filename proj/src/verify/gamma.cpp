#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lpsampler/random_tape.hpp"
#include "lpsampler/special_functions.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

using special::cplx;
using Wide = boost::multiprecision::cpp_bin_float_100;

// sum_n (-z)^n / (n! (n - s)) carried in 100 digits, so the e^|z|
// cancellation of the alternating series stays far below double precision.
cplx h_wide(double s, cplx z) {
  const Wide zr = z.real();
  const Wide zi = z.imag();
  const Wide ws = s;
  Wide tr = 1;
  Wide ti = 0;
  Wide sr = -1 / ws;
  Wide si = 0;
  const double modulus = std::abs(z);
  const Wide tiny = Wide("1e-80");
  for (int n = 1;; ++n) {
    // t *= -z / n
    const Wide nr = -(tr * zr - ti * zi) / n;
    const Wide ni = -(tr * zi + ti * zr) / n;
    tr = nr;
    ti = ni;
    const Wide denom = n - ws;
    sr += tr / denom;
    si += ti / denom;
    if (n > modulus && abs(tr) + abs(ti) < tiny) break;
  }
  return {static_cast<double>(sr), static_cast<double>(si)};
}

cplx principal_pow(cplx z, double a) { return std::exp(a * std::log(z)); }

}  // namespace

std::vector<CheckRow> gamma_suite(std::uint64_t seed) {
  const RandomTape tape(seed);
  constexpr int kPoints = 500;
  constexpr double kRadius = 100.0;
  constexpr double kSector = 0.75 * std::numbers::pi;

  double recurrence = 0.0;
  double complement = 0.0;
  double conjugate = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    const KeyPath base = KeyPath().role(Role::harness).trial(static_cast<std::uint64_t>(j));
    const double radius = kRadius * std::sqrt(tape.uniform(base.slot(0)));
    const double angle = kSector * (2.0 * tape.uniform(base.slot(1)) - 1.0);
    const double s = 0.05 + 0.9 * tape.uniform(base.slot(2));
    const cplx z = std::polar(radius, angle);

    const cplx h = special::h_function(s, z);
    const cplx lower_neg = principal_pow(z, -s) * h;
    const cplx decay = principal_pow(z, -s) * std::exp(-z);

    // gamma(1-s, z) = -s gamma(-s, z) - z^-s e^-z
    const cplx lhs = special::lower_gamma(1.0 - s, z);
    const cplx rhs = -s * lower_neg - decay;
    recurrence = std::max(recurrence, std::abs(lhs - rhs) / std::max(1.0, std::abs(decay)));

    // Gamma(-s, z) = Gamma(-s) - gamma(-s, z), lower part from the wide series.
    const cplx upper = special::upper_gamma(-s, z);
    const cplx split = std::tgamma(-s) - principal_pow(z, -s) * h_wide(s, z);
    const double upper_scale = std::max(1.0, std::abs(decay / z));
    complement = std::max(complement, std::abs(upper - split) / upper_scale);

    conjugate = std::max(conjugate, std::abs(special::h_function(s, std::conj(z)) - std::conj(h)));
  }

  // Both routes of h agree where they overlap.
  double overlap = 0.0;
  for (int j = 0; j < 100; ++j) {
    const KeyPath base = KeyPath().role(Role::harness_aux).trial(static_cast<std::uint64_t>(j));
    const double radius = 6.0 + 6.0 * tape.uniform(base.slot(0));
    const double angle = kSector * (2.0 * tape.uniform(base.slot(1)) - 1.0);
    const double s = 0.05 + 0.9 * tape.uniform(base.slot(2));
    const cplx z = std::polar(radius, angle);
    const double scale = std::max(1.0, std::abs(std::exp(-z) / z));
    overlap = std::max(overlap, std::abs(special::h_series(s, z) - special::h_upper(s, z)) / scale);
  }

  // h(1/2, 1) = gamma(-1/2, 1) = Gamma(-1/2) - int_1^inf t^-3/2 e^-t dt
  boost::math::quadrature::exp_sinh<double> integrator;
  const double tail = integrator.integrate([](double t) { return std::pow(t, -1.5) * std::exp(-t); }, 1.0,
                                           std::numeric_limits<double>::infinity());
  const double h_half_oracle = -2.0 * std::sqrt(std::numbers::pi) - tail;
  const double h_half = special::h_function(0.5, 1.0).real();

  std::vector<CheckRow> rows;
  rows.push_back(at_most("recurrence_max_scaled_residual", recurrence, 1e-8));
  rows.push_back(at_most("complement_max_scaled_residual", complement, 1e-8));
  rows.push_back(at_most("conjugate_symmetry_max_residual", conjugate, 1e-8));
  rows.push_back(at_most("series_vs_upper_overlap_residual", overlap, 1e-8));
  rows.push_back(at_most("h_half_at_one_vs_quadrature", std::fabs(h_half - h_half_oracle), 1e-5));
  rows.push_back(at_most("h_half_at_one_vs_reference", std::fabs(h_half + 3.723055), 1e-5));
  rows.push_back(at_most("gamma_negative_half_error", std::fabs(special::gamma_negative(0.5) + 2.0 * std::sqrt(std::numbers::pi)), 1e-8));
  return rows;
}

}  // namespace lps::verify

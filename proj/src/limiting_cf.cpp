#include "lpsampler/limiting_cf.hpp"

#include <cmath>
#include <string>

#include "lpsampler/error.hpp"
#include "lpsampler/special_functions.hpp"

namespace lps {

namespace {
constexpr double kSmallXi = 1e-8;
}

TailLaw::TailLaw(double p, double truncation) : p_(p), r_(truncation), s_(p / 2.0) {
  if (!(p > 0.0 && p < 2.0)) {
    throw DomainError("TailLaw: p must lie in (0, 2), got " + std::to_string(p));
  }
  if (!(truncation > 0.0) || !std::isfinite(truncation)) {
    throw DomainError("TailLaw: truncation R must be positive and finite");
  }
}

double TailLaw::mean() const noexcept { return s_ * std::pow(r_, 1.0 - s_) / (1.0 - s_); }

double TailLaw::variance() const noexcept { return s_ * std::pow(r_, 2.0 - s_) / (2.0 - s_); }

cplx unit_log_cf(double s, double w) {
  if (!(w >= 0.0)) {
    throw DomainError("unit_log_cf: w must be non-negative");
  }
  if (w == 0.0) return {0.0, 0.0};
  return s * special::h_minus_origin(s, cplx(0.0, -w));
}

cplx log_cf(double t, const TailLaw& law) {
  if (t == 0.0) return {0.0, 0.0};
  // h(conj z) = conj h(z): evaluate on the negative imaginary axis only so
  // that log_cf(-t) is exactly the conjugate of log_cf(t).
  const cplx value = std::pow(law.truncation(), -law.s()) * unit_log_cf(law.s(), std::fabs(t) * law.truncation());
  return t > 0 ? value : std::conj(value);
}

cplx cf(double t, const TailLaw& law) { return std::exp(log_cf(t, law)); }

double gil_pelaez_integrand(double xi, double t, const TailLaw& law) {
  if (!(xi > 0.0)) {
    throw DomainError("gil_pelaez_integrand: xi must be positive");
  }
  const cplx c = log_cf(xi, law);
  if (xi < kSmallXi) {
    // Im((1 - i t xi)(1 + C)) / xi with C = O(xi).
    return (c.imag() - t * xi * (1.0 + c.real())) / xi;
  }
  const cplx rotated = std::exp(cplx(c.real(), c.imag() - t * xi));
  return rotated.imag() / xi;
}

}  // namespace lps

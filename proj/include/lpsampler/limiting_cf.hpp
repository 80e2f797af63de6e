#pragma once

// Characteristic function of the limiting truncated tail law D(p, R): the
// infinitely divisible law on [0, inf) with Levy density s z^(-1-s) on (0, R],
// s = p/2. It is the law of the normalized sum of squared inverse-exponential
// scalings lying below the truncation level R.

#include <complex>

namespace lps {

using cplx = std::complex<double>;

class TailLaw {
 public:
  // Throws DomainError unless 0 < p < 2 and R is positive and finite.
  TailLaw(double p, double truncation);

  double p() const noexcept { return p_; }
  double truncation() const noexcept { return r_; }
  double s() const noexcept { return s_; }

  // s R^(1-s) / (1-s) and s R^(2-s) / (2-s).
  double mean() const noexcept;
  double variance() const noexcept;

  friend bool operator==(const TailLaw&, const TailLaw&) = default;

 private:
  double p_;
  double r_;
  double s_;
};

// s (h(s, -iw) + 1/s) for w >= 0: the log characteristic function at
// argument w of the law with truncation 1, per unit of Levy intensity. Every
// law of the family is a rescaling: log phi(t) = R^-s * unit_log_cf(s, |t| R),
// conjugated for t < 0.
cplx unit_log_cf(double s, double w);

// log phi(t) = R^-s (1 + s h(s, -itR)).
cplx log_cf(double t, const TailLaw& law);

// phi(t) = exp(log_cf(t)).
cplx cf(double t, const TailLaw& law);

// Im(e^{-it xi} phi(xi)) / xi, the real form of the Gil-Pelaez integrand:
// F(t) = 1/2 - (1/pi) * integral_0^inf of this d xi. Requires xi > 0.
double gil_pelaez_integrand(double xi, double t, const TailLaw& law);

}  // namespace lps

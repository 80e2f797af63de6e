#pragma once

// Complex incomplete gamma machinery for the truncated-tail characteristic
// function. Everything here is for the tail index s = p/2 in (0, 1) and for
// arguments in the sector |arg z| <= 3pi/4 (validated for |z| <= 1e4).
//
// Complex powers use the principal branch, z^a = exp(a Log z) with
// arg z in (-pi, pi].

#include <complex>

namespace lps::special {

using cplx = std::complex<double>;

// Below this modulus the power series is used; above it the upper-gamma route.
inline constexpr double kSeriesRadius = 12.0;
// Above this modulus the upper-gamma route uses the asymptotic series
// (falling back to the continued fraction if it cannot reach full accuracy).
inline constexpr double kAsymptoticRadius = 60.0;
inline constexpr int kContinuedFractionCap = 10000;

// Gamma(-s) for s in (0, 1).
double gamma_negative(double s);

// h(z) = z^s * gamma(-s, z) = sum_{n>=0} (-1)^n z^n / (n! (n - s)), an entire
// function of z; regime selected by |z|.
cplx h_function(double s, cplx z);

// h(z) - h(0) = h(z) + 1/s, without the cancellation of the n = 0 term.
cplx h_minus_origin(double s, cplx z);

// The two routes behind h_function, exposed for cross-checking.
cplx h_series(double s, cplx z);
cplx h_upper(double s, cplx z);

// Gamma(a, z) for a in (-1, 1], a != 0, z != 0, |arg z| <= 3pi/4.
cplx upper_gamma(double a, cplx z);

// gamma(a, z) = Gamma(a) - Gamma(a, z) (analytic continuation in a), same domain.
cplx lower_gamma(double a, cplx z);

}  // namespace lps::special

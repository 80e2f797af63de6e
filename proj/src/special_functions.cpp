#include "lpsampler/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lpsampler/error.hpp"

namespace lps::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kSeriesCap = 2000;

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx x) {
    add_part(re_, re_c_, x.real());
    add_part(im_, im_c_, x.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

void require_tail_index(double s, const char* who) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError(std::string(who) + ": tail index s must lie in (0, 1), got " + std::to_string(s));
  }
}

void require_upper_domain(double a, cplx z, const char* who) {
  if (!(a > -1.0 && a <= 1.0) || a == 0.0) {
    throw DomainError(std::string(who) + ": order a must lie in (-1, 1] \\ {0}");
  }
  if (z == cplx(0.0, 0.0)) {
    throw DomainError(std::string(who) + ": z must be nonzero");
  }
  if (std::fabs(std::arg(z)) > 0.75 * std::numbers::pi + 1e-12) {
    throw DomainError(std::string(who) + ": |arg z| exceeds 3pi/4");
  }
}

// sum_{n >= first} (-z)^n / (n! (a + n)); z^a times the full sum (first = 0)
// is the lower incomplete gamma function.
cplx lower_series_scaled(double a, cplx z, int first) {
  cplx term(1.0, 0.0);  // (-z)^n / n!
  CompensatedSum sum;
  const double radius = std::abs(z);
  for (int n = 0; n < kSeriesCap; ++n) {
    if (n > 0) term *= -z / static_cast<double>(n);
    if (n < first) continue;
    const cplx contribution = term / (a + n);
    sum.add(contribution);
    const double mag = std::abs(contribution);
    if (n > radius && (mag <= 0.25 * kEps * std::abs(sum.value()) || mag < kTiny)) {
      return sum.value();
    }
  }
  throw ConvergenceError("incomplete gamma power series did not converge", std::abs(z), a);
}

// Modified Lentz evaluation of the Legendre continued fraction
//   e^z z^-a Gamma(a, z) = 1/(z+1-a- 1(1-a)/(z+3-a- 2(2-a)/(z+5-a- ...))).
cplx upper_scaled_continued_fraction(double a, cplx z) {
  cplx b = z + 1.0 - a;
  cplx c = 1.0 / kTiny;
  cplx d = 1.0 / b;
  cplx result = d;
  cplx previous = result;
  for (int i = 1; i <= kContinuedFractionCap; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const cplx delta = d * c;
    previous = result;
    result *= delta;
    if (std::abs(delta - 1.0) < 4.0 * kEps) return result;
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge", std::abs(previous),
                         std::abs(result));
}

// Optimally truncated asymptotic series z^-1 sum_k (a-1)...(a-k) z^-k for the
// same scaled quantity. Returns false if the smallest term is not negligible.
bool upper_scaled_asymptotic(double a, cplx z, cplx& out) {
  cplx term(1.0, 0.0);
  cplx sum = term;
  double last = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= (a - k) / z;
    const double mag = std::abs(term);
    if (mag > last) return false;
    sum += term;
    if (mag <= kEps * std::abs(sum)) {
      out = sum / z;
      return true;
    }
    last = mag;
  }
  return false;
}

cplx upper_scaled(double a, cplx z) {
  if (std::abs(z) >= kAsymptoticRadius) {
    cplx out;
    if (upper_scaled_asymptotic(a, z, out)) return out;
  }
  return upper_scaled_continued_fraction(a, z);
}

cplx principal_pow(cplx z, double a) { return std::exp(a * std::log(z)); }

}  // namespace

double gamma_negative(double s) {
  require_tail_index(s, "gamma_negative");
  return std::tgamma(-s);
}

cplx h_series(double s, cplx z) {
  require_tail_index(s, "h_series");
  return lower_series_scaled(-s, z, 0);
}

cplx h_upper(double s, cplx z) {
  require_tail_index(s, "h_upper");
  if (z == cplx(0.0, 0.0)) return -1.0 / s;
  return std::tgamma(-s) * principal_pow(z, s) - std::exp(-z) * upper_scaled(-s, z);
}

cplx h_function(double s, cplx z) {
  require_tail_index(s, "h_function");
  if (std::abs(z) <= kSeriesRadius) return lower_series_scaled(-s, z, 0);
  return h_upper(s, z);
}

cplx h_minus_origin(double s, cplx z) {
  require_tail_index(s, "h_minus_origin");
  if (std::abs(z) <= kSeriesRadius) return lower_series_scaled(-s, z, 1);
  return h_upper(s, z) + 1.0 / s;
}

cplx upper_gamma(double a, cplx z) {
  require_upper_domain(a, z, "upper_gamma");
  if (std::abs(z) <= kSeriesRadius) {
    return std::tgamma(a) - principal_pow(z, a) * lower_series_scaled(a, z, 0);
  }
  return std::exp(-z) * principal_pow(z, a) * upper_scaled(a, z);
}

cplx lower_gamma(double a, cplx z) {
  require_upper_domain(a, z, "lower_gamma");
  if (std::abs(z) <= kSeriesRadius) return principal_pow(z, a) * lower_series_scaled(a, z, 0);
  return std::tgamma(a) - upper_gamma(a, z);
}

}  // namespace lps::special

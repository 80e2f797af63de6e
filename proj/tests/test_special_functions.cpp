#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "lpsampler/error.hpp"
#include "lpsampler/special_functions.hpp"

using namespace lps::special;

namespace {

// 30-digit mpmath values, h(s, z) = z^s (Gamma(-s) - Gamma(-s, z)).
const cplx kH03(-6.05837223414371001, -1.86574462537473276);    // h(0.3, 2+3i)
const cplx kH07(-6.16908911994185502, 11.7485580733591480);     // h(0.7, -5i)
const cplx kUpper(-1.39524855550631458e-11, -3.15910518485263349e-11);  // Gamma(-0.3, 20-10i)

}  // namespace

TEST_CASE("h at reference points") {
  CHECK(std::abs(h_function(0.5, 0.0) - cplx(-2.0, 0.0)) < 1e-15);
  CHECK(std::abs(h_function(0.5, 1.0) - cplx(-3.72305541359259274, 0.0)) < 1e-10);
  CHECK(std::abs(h_function(0.3, cplx(2.0, 3.0)) - kH03) < 1e-10);
  CHECK(std::abs(h_function(0.7, cplx(0.0, -5.0)) - kH07) < 1e-10);
}

TEST_CASE("series and upper routes overlap") {
  for (double r : {6.0, 9.0, 12.0}) {
    for (double arg : {-2.0, -1.5707963267948966, 0.0, 1.0, 2.3}) {
      const cplx z = std::polar(r, arg);
      CHECK(std::abs(h_series(0.4, z) - h_upper(0.4, z)) < 1e-8);
    }
  }
}

TEST_CASE("h conjugate symmetry") {
  const cplx z(3.5, -7.25);
  CHECK(std::abs(h_function(0.6, std::conj(z)) - std::conj(h_function(0.6, z))) < 1e-12);
}

TEST_CASE("upper gamma") {
  CHECK(std::abs(upper_gamma(-0.5, 1.0) - cplx(0.178147711781560690, 0.0)) < 1e-10);
  CHECK(std::abs(upper_gamma(-0.3, cplx(20.0, -10.0)) - kUpper) < 1e-9 * std::abs(kUpper));
  for (double x : {0.5, 2.0, 10.0}) CHECK(std::abs(upper_gamma(1.0, x) - std::exp(-x)) < 1e-12);
  // one asymptotic term on the negative imaginary ray
  const double a = -0.4;
  const cplx z(0.0, -50.0);
  const cplx lead = std::pow(z, a - 1.0) * std::exp(-z);
  CHECK(std::abs(upper_gamma(a, z) / lead - 1.0) < 0.05);
}

TEST_CASE("gamma at negative arguments") {
  CHECK(gamma_negative(0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  for (int j = 1; j <= 9; ++j) {
    const double s = 0.1 * j;
    CHECK(gamma_negative(s) < 0.0);
    CHECK(std::fabs(std::tgamma(1.0 - s) + s * gamma_negative(s)) < 1e-10);
  }
  CHECK_THROWS_AS(gamma_negative(0.0), lps::DomainError);
  CHECK_THROWS_AS(gamma_negative(1.0), lps::DomainError);
  CHECK_THROWS_AS(h_function(1.2, 1.0), lps::DomainError);
}

TEST_CASE("h maximal on the real axis") {
  for (double x : {-1.0, 0.0, 2.0, 8.0}) {
    const double on_axis = h_function(0.5, x).real();
    for (double y : {0.5, 3.0, 20.0}) CHECK(h_function(0.5, cplx(x, y)).real() <= on_axis + 1e-12);
  }
}

#include <doctest.h>

#include <cmath>
#include <complex>

#include "lpsampler/cdf_oracle.hpp"
#include "lpsampler/error.hpp"
#include "lpsampler/limiting_cf.hpp"

using namespace lps;

TEST_CASE("log cf against mpmath") {
  // R^-s (1 + s h(s, -itR)) with h from 30-digit incomplete gammas, and
  // agreeing with direct quadrature of the Levy integral.
  CHECK(std::abs(log_cf(1.0, TailLaw(1.0, 1.0)) - cplx(-0.160838909314901921, 0.967577490992647656)) < 1e-10);
  CHECK(std::abs(log_cf(3.5, TailLaw(0.5, 5.0)) - cplx(-0.889162206205993230, 0.639989937227177127)) < 1e-10);
  CHECK(std::abs(log_cf(0.2, TailLaw(1.5, 0.05)) - cplx(-0.000283721573335897530, 0.283721957290338556)) < 1e-10);
}

TEST_CASE("cf basics") {
  const TailLaw law(1.0, 1.0);
  CHECK(log_cf(0.0, law) == cplx(0.0, 0.0));
  CHECK(cf(0.0, law) == cplx(1.0, 0.0));
  CHECK(std::abs(cf(-2.5, law) - std::conj(cf(2.5, law))) < 1e-15);
  const double slope = (log_cf(1e-4, law).imag() - log_cf(-1e-4, law).imag()) / 2e-4;
  CHECK(slope == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(law.mean() == doctest::Approx(1.0));
  CHECK_THROWS_AS(TailLaw(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(TailLaw(1.0, 0.0), DomainError);
}

TEST_CASE("gil-pelaez integrand") {
  const TailLaw law(1.0, 1.0);
  CHECK(std::isfinite(gil_pelaez_integrand(1e-12, 1.0, law)));
  CHECK(std::fabs(gil_pelaez_integrand(1e-12, 1.0, law)) < 10.0 * (1.0 + law.mean()));
  // complex form against the real reduction
  const double xi = 2.0, t = 1.0;
  const cplx i(0.0, 1.0);
  const cplx complex_form =
      (std::exp(i * t * xi) * cf(-xi, law) - std::exp(-i * t * xi) * cf(xi, law)) / (2.0 * i) / xi;
  CHECK(std::fabs(complex_form.real() + gil_pelaez_integrand(xi, t, law)) < 1e-12);
  CHECK_THROWS_AS(gil_pelaez_integrand(0.0, 1.0, law), DomainError);
}

TEST_CASE("cdf against mpmath Gil-Pelaez integrals") {
  const QuadratureConfig q;
  const TailLaw unit(1.0, 1.0);
  CHECK(std::fabs(evaluate_cdf(0.5, unit, q) - 0.207457228960744701) < 2 * q.tolerance);
  CHECK(std::fabs(evaluate_cdf(1.0, unit, q) - 0.571087649733676427) < 2 * q.tolerance);
  CHECK(std::fabs(evaluate_cdf(2.0, unit, q) - 0.936959712200463889) < 2 * q.tolerance);
  CHECK(std::fabs(evaluate_cdf(7.0, TailLaw(1.5, 5.0), q) - 0.873402591412832107) < 2 * q.tolerance);
}

TEST_CASE("cdf edges") {
  const QuadratureConfig q;
  for (double p : {0.5, 1.0, 1.5}) {
    const TailLaw law(p, 0.5);
    CHECK(evaluate_cdf(0.0, law, q) <= q.tolerance);
    CHECK(evaluate_cdf(-1.0, law, q) == 0.0);
    CHECK(evaluate_cdf(100.0 * law.mean(), law, q) >= 1.0 - 10.0 * q.tolerance);
  }
}

TEST_CASE("truncation choice is monotone") {
  const TailLaw law(1.0, 1.0);
  CHECK(choose_truncation(1.0, law, 1e-6) <= choose_truncation(10.0, law, 1e-6));
  CHECK(choose_truncation(1.0, law, 1e-6) <= choose_truncation(1.0, law, 5e-7));
  const double cut = choose_truncation(1.0, law, 1e-6);
  CHECK(std::fabs(gil_pelaez_integrand(cut, 1.0, law)) < 1e-6 / (10.0 * cut));
}

TEST_CASE("tanh trapezoid") {
  QuadratureConfig q;
  q.tolerance = 1e-10;
  CHECK(tanh_trapezoid([](double) { return 0.0; }, 5.0, q) == 0.0);
  CHECK(tanh_trapezoid([](double x) { return std::exp(-x); }, 40.0, q) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quadrature config validation") {
  QuadratureConfig q;
  q.tolerance = 0.5;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q = {};
  q.max_halvings = 3;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q = {};
  q.growth = 1.0;
  CHECK_THROWS_AS(q.validate(), DomainError);
}

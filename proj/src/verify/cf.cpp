#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/sinc.hpp>

#include "lpsampler/limiting_cf.hpp"
#include "lpsampler/random_tape.hpp"
#include "suites.hpp"

namespace lps::verify {

namespace {

// s int_0^R (e^{itz} - 1) z^(-1-s) dz by direct quadrature: tanh-sinh over the
// first half period (integrable z^-s singularity), Gauss-Kronrod per half
// period after that.
cplx levy_integral(double t, double p, double r) {
  const double s = 0.5 * p;
  // Written through sinc so the endpoint z -> 0 stays finite.
  auto re = [&](double z) {
    const double half = boost::math::sinc_pi(0.5 * t * z);
    return -0.5 * t * t * half * half * std::pow(z, 1.0 - s);
  };
  auto im = [&](double z) { return t * boost::math::sinc_pi(t * z) * std::pow(z, -s); };
  const double period = std::numbers::pi / t;
  const double first = std::min(r, period);
  boost::math::quadrature::tanh_sinh<double> singular;
  double sum_re = singular.integrate(re, 0.0, first, 1e-14);
  double sum_im = singular.integrate(im, 0.0, first, 1e-14);
  for (double a = first; a < r; a += period) {
    const double b = std::min(r, a + period);
    sum_re += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(re, a, b, 10, 1e-14);
    sum_im += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(im, a, b, 10, 1e-14);
  }
  return s * cplx(sum_re, sum_im);
}

}  // namespace

std::vector<CheckRow> cf_suite(std::uint64_t seed) {
  const RandomTape tape(seed);
  const double ps[] = {0.5, 1.0, 1.5};
  const double rs[] = {0.05, 0.5, 1.0, 5.0};
  constexpr int kTimes = 20;

  double worst_quadrature = 0.0;
  double worst_modulus = 0.0;
  double worst_conjugate = 0.0;
  double worst_origin = 0.0;
  double worst_small_xi = 0.0;
  double worst_eigen = 0.0;
  for (const double p : ps) {
    for (const double r : rs) {
      const TailLaw law(p, r);
      for (int j = 0; j < kTimes; ++j) {
        // log-spaced over [0.01, 50]
        const double t = 0.01 * std::pow(5000.0, static_cast<double>(j) / (kTimes - 1));
        worst_quadrature = std::max(worst_quadrature, std::abs(log_cf(t, law) - levy_integral(t, p, r)));
        worst_conjugate = std::max(worst_conjugate, std::abs(cf(-t, law) - std::conj(cf(t, law))));
        const double value = gil_pelaez_integrand(1e-12, t, law);
        worst_small_xi = std::max(worst_small_xi, std::fabs(value) / (10.0 * (t + law.mean())));
      }
      for (int j = 0; j <= 400; ++j) {
        const double t = 1e-3 * std::pow(1e7, static_cast<double>(j) / 400.0);
        worst_modulus = std::max(worst_modulus, std::abs(cf(t, law)) - 1.0);
      }
      worst_origin = std::max(worst_origin, std::abs(cf(0.0, law) - 1.0));

      // [phi(t_i - t_j)] is positive semidefinite for any real grid.
      const KeyPath base = KeyPath().role(Role::harness).instance(static_cast<std::uint64_t>(p * 4)).coordinate(
          static_cast<std::uint64_t>(r * 100));
      std::vector<double> grid(6);
      tape.fill_uniforms(base, grid);
      Eigen::MatrixXcd gram(6, 6);
      for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) gram(a, b) = cf(20.0 * (grid[a] - grid[b]) / r, law);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
      worst_eigen = std::max(worst_eigen, -solver.eigenvalues().minCoeff());
    }
  }

  // Mean of the unit law through the slope of Im log phi at 0.
  const TailLaw unit(1.0, 1.0);
  const double slope = (log_cf(1e-4, unit).imag() - log_cf(-1e-4, unit).imag()) / 2e-4;

  // |phi| decreases along t in [10, 1000] for p = 1, R = 1.
  double rise = 0.0;
  double previous = std::abs(cf(10.0, unit));
  for (int j = 1; j <= 200; ++j) {
    const double modulus = std::abs(cf(10.0 * std::pow(100.0, j / 200.0), unit));
    rise = std::max(rise, modulus - previous);
    previous = modulus;
  }

  std::vector<CheckRow> rows;
  rows.push_back(at_most("log_cf_vs_quadrature_max_abs", worst_quadrature, 1e-8));
  rows.push_back(at_most("cf_at_zero_deviation", worst_origin, 0.0));
  rows.push_back(at_most("cf_modulus_excess", worst_modulus, 1e-9));
  rows.push_back(at_most("cf_conjugate_symmetry", worst_conjugate, 1e-12));
  rows.push_back(at_most("mean_slope_error", std::fabs(slope - 1.0), 1e-3));
  rows.push_back(at_most("modulus_rise_on_10_1000", rise, 0.0));
  rows.push_back(at_most("small_xi_integrand_ratio", worst_small_xi, 1.0));
  rows.push_back(at_most("gram_min_eigenvalue_negated", worst_eigen, 1e-6));
  return rows;
}

}  // namespace lps::verify

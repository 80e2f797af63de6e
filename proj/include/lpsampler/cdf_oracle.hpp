#pragma once

// CDF of the truncated tail law by Gil-Pelaez inversion,
//   F(t) = 1/2 - (1/pi) integral_0^inf Im(e^{-it xi} phi(xi)) / xi d xi,
// truncated to [0, L] and integrated with the tanh-mapped trapezoid rule
// xi = (L/2)(1 + tanh u), halving the mesh until two successive estimates agree.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "lpsampler/limiting_cf.hpp"

namespace lps {

struct QuadratureConfig {
  double tolerance = 1e-6;    // target absolute error of F
  double initial_mesh = 0.5;  // trapezoid step in the tanh variable
  int max_halvings = 20;
  double growth = 2.0;  // geometric factor of the truncation search

  // Throws DomainError unless tolerance in (1e-14, 0.1), max_halvings >= 4,
  // initial_mesh > 0 and growth > 1.
  void validate() const;
};

// Truncation point of the inversion integral: the first L = L0 * growth^m,
// L0 = max(1, 1/R), with |phi(xi)|/xi < tolerance / (10 L) at xi = L and 2L.
// |phi(xi)|/xi bounds the integrand for every t, so the result is the same
// for all t (hence monotone in |t|). Throws ConvergenceError after 60 steps.
double choose_truncation(double t, const TailLaw& law, double tolerance, double growth = 2.0);

// Integrates f over (0, cut) with the tanh substitution and the trapezoid rule
// on u in [-U, U], U = ln(4 cut / tolerance) + 10, halving the mesh (at least
// twice) until two estimates differ by less than tolerance / 2. `estimates`,
// if given, receives the estimate at every mesh level.
double tanh_trapezoid(const std::function<double(double)>& f, double cut, const QuadratureConfig& q,
                      std::vector<double>* estimates = nullptr);

struct CdfPoint {
  double cdf = 0.0;
  double density = 0.0;  // derivative of the same trapezoid sum
  int levels = 0;        // mesh levels used
};

// CDF evaluator bound to one law. phi is computed once per quadrature node and
// kept, so evaluations at many t (quantile search) only pay for the
// oscillatory factor. Nodes whose contribution is provably below
// tolerance / (40 U) per unit of u are skipped. Not thread-safe.
class CdfOracle {
 public:
  CdfOracle(const TailLaw& law, const QuadratureConfig& q);

  const TailLaw& law() const noexcept { return law_; }
  const QuadratureConfig& config() const noexcept { return q_; }
  double truncation() const noexcept { return cut_ / law_.truncation(); }

  // F(t) clamped to [0, 1]; exactly 0 for t <= 0.
  double evaluate(double t) { return evaluate_point(t).cdf; }
  // Uses at least `min_levels` mesh levels. Holding the level count fixed
  // makes F a smooth function of t, which a root finder relies on.
  CdfPoint evaluate_point(double t, int min_levels = 0);

  // Partial estimates of F(t) per mesh level, without early stopping.
  std::vector<double> level_estimates(double t, int levels);

 private:
  // Quantities are in the scaled variable w = xi R, where the law has
  // truncation 1 and Levy intensity lambda = R^-s.
  struct Nodes {
    std::vector<double> w;
    std::vector<double> weight;    // (L/2) sech^2 u
    std::vector<double> cos_coef;  // weight Im(phi) / w
    std::vector<double> sin_coef;  // weight Re(phi) / w
    std::vector<double> envelope;  // weight |phi| / w
  };
  // Nodes of one mesh level. The u >= 0 half is built eagerly up to the point
  // where the envelope drops below the skip threshold; the u < 0 half is
  // extended outwards on demand, since how far it matters depends on t.
  struct Level {
    Nodes right;
    Nodes left;  // in order of decreasing u
    long long next_left = 0;
    long long last_left = 0;
  };

  Level& level(int index);
  void extend_left(Level& lv, int index, double slope);
  void add_node(Nodes& nodes, double u) const;
  double step(int index) const;
  void accumulate(Level& lv, int index, double t_scaled, double& f_sum, double& d_sum);

  TailLaw law_;
  QuadratureConfig q_;
  double lambda_;
  double mean_scaled_;
  double cut_;  // scaled truncation L R
  double u_range_;
  double skip_threshold_;
  double u_right_stop_;
  std::vector<Level> levels_;
  std::unordered_map<std::uint64_t, CdfPoint> cache_;
};

// One-shot F(t) to within q.tolerance.
double evaluate_cdf(double t, const TailLaw& law, const QuadratureConfig& q);

}  // namespace lps

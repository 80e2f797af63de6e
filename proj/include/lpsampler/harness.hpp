#pragma once

// Reference oracles for the acceptance suites. Nothing here calls into the
// production samplers: the finite-k oracles simulate the duplicated
// inverse-exponential scalings directly.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lpsampler/random_tape.hpp"

namespace lps {

struct FiniteKSample {
  std::vector<double> head;  // tau largest normalized values, decreasing
  double tail_sq = 0.0;      // sum of squares of the remaining k - tau values
  std::uint64_t k = 0;
};

// Draws k standard exponentials e_j and forms V_j = (lambda + k e_j)^(-1/p).
// lambda = 0 is the plain duplication; lambda = R^(-p/2) conditions every
// squared term on staying below R. The base key must leave slot and row
// unset. O(k) per call.
FiniteKSample brute_force_finite_k(const RandomTape& tape, const KeyPath& base, double p, std::uint64_t k, int tau,
                                   double lambda = 0.0);

// Same law, generated from the ordered exponentials: the smallest ones are
// produced one by one (Renyi representation) until k e reaches `cut`; the
// terms beyond are i.i.d. given that count and their sum of squares is
// replaced by a moment-matched Gaussian. Cost O(cut) per call.
class FiniteKGenerator {
 public:
  // offset lambda >= 0 shifts every k e_j by lambda, i.e. conditions each e_j
  // on e_j >= lambda / k. lambda = R^(-p/2) gives the R-truncated terms.
  FiniteKGenerator(double p, std::uint64_t k, int tau, double lambda = 0.0, double cut = 64.0);

  FiniteKSample operator()(const RandomTape& tape, const KeyPath& base) const;

  double bulk_mean() const noexcept { return m1_; }
  double bulk_variance() const noexcept { return m2_ - m1_ * m1_; }

 private:
  double p_;
  std::uint64_t k_;
  int tau_;
  double lambda_;
  double cut_;
  double m1_ = 0.0;  // E[T], E[T^2] for T = (lambda + cut + k X)^(-2/p), X ~ Exp(1)
  double m2_ = 0.0;
};

// One draw from D_{p,R,k}: k^(-2/p) times the sum of k i.i.d. E^(-2/p)
// conditioned on not exceeding R k^(2/p).
double finite_k_tail_sum(const FiniteKGenerator& generator, const RandomTape& tape, const KeyPath& base);

// q_i = |x_i|^p / sum_j |x_j|^p. Throws DomainError for an all-zero x.
std::vector<double> exact_lp_distribution(std::span<const std::int64_t> x, double p);

struct ChiSquareResult {
  double statistic = 0.0;
  double critical = 0.0;
  double p_value = 1.0;
  int dof = 0;
  bool pass = false;
};

// Pearson test of counts against probs. Categories with zero probability
// take no degree of freedom and any count in them fails the test. Throws
// DomainError when the total is below 50 / min positive prob.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> probs,
                                double significance);

// sup_i max(|F(x_i) - i/N|, |F(x_i) - (i-1)/N|) for sorted samples.
double ks_statistic(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance. Inputs need not be sorted.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Empirical cdf of sorted samples at x: fraction <= x.
double empirical_cdf(std::span<const double> sorted_samples, double x);

// (1/2) sum |counts_i / N - probs_i|.
double total_variation(std::span<const std::uint64_t> counts, std::span<const double> probs);

}  // namespace lps

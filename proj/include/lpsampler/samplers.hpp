#pragma once

// Per-coordinate simulation of the scaled duplicated vector: the top tau
// normalized inverse-exponential scalings (head) and the aggregate of the
// squares of all the others (tail), drawn from their limiting laws.

#include <cstdint>
#include <vector>

#include "lpsampler/cdf_oracle.hpp"
#include "lpsampler/limiting_cf.hpp"
#include "lpsampler/random_tape.hpp"

namespace lps {

struct HeadStatistics {
  std::vector<double> arrivals;  // Gamma_1 < ... < Gamma_tau
  std::vector<double> values;    // v_j = Gamma_j^(-1/p), decreasing
  double truncation = 0.0;       // R = v_tau^2

  std::size_t size() const noexcept { return values.size(); }
};

struct TailAggregate {
  double sigma_sq = 0.0;
  int cdf_evaluations = 0;
};

// Head from the arrival times of a unit-rate Poisson process: Gamma_j is the
// running sum of exponentials read from base.slot(j - 1). `base` must not set
// the slot. Requires tau >= 2 and 0 < p < 2.
HeadStatistics sample_head(const RandomTape& tape, const KeyPath& base, int tau, double p);

// Same tape layout as the pipeline: instance a, coordinate i, head role.
HeadStatistics sample_head(const RandomTape& tape, std::uint64_t instance, std::uint64_t coordinate, int tau,
                           double p);

// Points above y0 of the Poisson process with tail intensity y^-p: a
// Poisson(y0^-p) count (inversion of one uniform at base.role(ppp_count)),
// then i.i.d. y0 U^(-1/p) locations from base.role(ppp_location).row(l),
// sorted decreasing. `base` must not set the role or row.
std::vector<double> sample_head_ppp_region(const RandomTape& tape, const KeyPath& base, double y0, double p);

// x rounded to `bits` significant bits, ties to even.
double round_to_bits(double x, int bits);

// Inverse-CDF draw from the tail law using the uniform at `key`, clamped to
// [2^-40, 1 - 2^-40]. The bracket starts at the law mean and doubles (at most
// 60 times); a safeguarded Newton search, using the density from the same
// quadrature nodes, then narrows it to relative width 2^-L_bits and the
// midpoint is rounded to L_bits bits. L_bits must lie in [8, 48].
TailAggregate sample_tail_sum(const RandomTape& tape, const KeyPath& key, const TailLaw& law, int l_bits,
                              const QuadratureConfig& q);

// Inverse of a CDF oracle at probability y (already clamped by the caller).
TailAggregate invert_cdf(CdfOracle& oracle, double y, int l_bits);

}  // namespace lps

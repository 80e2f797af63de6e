#include "lpsampler/cdf_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "lpsampler/error.hpp"

namespace lps {

namespace {

constexpr int kTruncationSteps = 60;
constexpr int kMinLevels = 3;
constexpr std::size_t kRayCacheLimit = std::size_t{1} << 21;

// unit_log_cf depends on R only through the scaled argument, and the tanh
// nodes land on the same scaled abscissae for every law whose scaled
// truncation agrees (always a power of two when R <= 1), so per-thread
// memoization removes nearly all incomplete-gamma work from repeated sampling.
struct RayKey {
  double s;
  double w;
  bool operator==(const RayKey&) const = default;
};

struct RayKeyHash {
  std::size_t operator()(const RayKey& k) const noexcept {
    std::uint64_t x = std::bit_cast<std::uint64_t>(k.w) ^ (std::bit_cast<std::uint64_t>(k.s) * 0x9E3779B97F4A7C15ULL);
    x ^= x >> 31;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 29;
    return static_cast<std::size_t>(x);
  }
};

cplx cached_unit_log_cf(double s, double w) {
  thread_local std::unordered_map<RayKey, cplx, RayKeyHash> cache;
  const RayKey key{s, w};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= kRayCacheLimit) cache.clear();
  const cplx value = unit_log_cf(s, w);
  cache.emplace(key, value);
  return value;
}

// |phi(w)| / w in the scaled variable.
double scaled_envelope(double lambda, double s, double w) {
  return std::exp(lambda * cached_unit_log_cf(s, w).real()) / w;
}

// Scaled truncation L R.
double scaled_truncation(const TailLaw& law, double tolerance, double growth) {
  const double r = law.truncation();
  const double s = law.s();
  const double lambda = std::pow(r, -s);
  double cut = std::max(r, 1.0);
  double previous = cut;
  for (int m = 0; m <= kTruncationSteps; ++m) {
    const double bound = tolerance / (10.0 * cut);
    if (scaled_envelope(lambda, s, cut) < bound && scaled_envelope(lambda, s, 2.0 * cut) < bound) {
      return cut;
    }
    previous = cut;
    cut *= growth;
  }
  throw ConvergenceError("choose_truncation: no truncation point within " + std::to_string(kTruncationSteps) +
                             " growth steps",
                         previous / r, cut / r);
}

// sech^2(u) without overflow.
double sech_squared(double u) {
  const double e = std::exp(-2.0 * std::fabs(u));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

double u_range_for(double cut, double tolerance) { return std::log(4.0 * cut / tolerance) + 10.0; }

// sin and cos of x for the inner quadrature loop: Cody-Waite reduction by
// pi/2 and the fdlibm kernels on [-pi/4, pi/4]. Error stays near 1 ulp for
// |x| < 2^20; larger arguments go to libm.
inline void fast_sincos(double x, double& sn, double& cs) {
  constexpr double kTwoOverPi = 6.36619772367581382433e-01;
  constexpr double kPio2Hi = 1.57079632673412561417e+00;
  constexpr double kPio2Mid = 6.07710050630396597660e-11;
  constexpr double kPio2Lo = 2.02226624879595063154e-21;
  if (!(std::fabs(x) < 1048576.0)) {
    sn = std::sin(x);
    cs = std::cos(x);
    return;
  }
  const double k = std::nearbyint(x * kTwoOverPi);
  const double r = ((x - k * kPio2Hi) - k * kPio2Mid) - k * kPio2Lo;
  const double z = r * r;
  const double sin_r =
      r + r * z *
              (-1.66666666666666324348e-01 +
               z * (8.33333333332248946124e-03 +
                    z * (-1.98412698298579493134e-04 +
                         z * (2.75573137070700676789e-06 + z * (-2.50507602534068634195e-08 + z * 1.58969099521155010221e-10)))));
  const double cos_r =
      1.0 - 0.5 * z +
      z * z *
          (4.16666666666666019037e-02 +
           z * (-1.38888888888741095749e-03 +
                z * (2.48015872894767294178e-05 +
                     z * (-2.75573143513906633035e-07 + z * (2.08757232129817482790e-09 + z * -1.13596475577881948265e-11)))));
  switch (static_cast<long long>(k) & 3) {
    case 0: sn = sin_r; cs = cos_r; break;
    case 1: sn = cos_r; cs = -sin_r; break;
    case 2: sn = -sin_r; cs = -cos_r; break;
    default: sn = -cos_r; cs = sin_r; break;
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(tolerance > 1e-14 && tolerance < 0.1)) {
    throw DomainError("quadrature tolerance must lie in (1e-14, 0.1)");
  }
  if (max_halvings < 4) throw DomainError("quadrature needs at least 4 halvings");
  if (!(initial_mesh > 0.0) || !std::isfinite(initial_mesh)) {
    throw DomainError("initial mesh must be positive");
  }
  if (!(growth > 1.0) || !std::isfinite(growth)) throw DomainError("truncation growth must exceed 1");
}

double choose_truncation(double t, const TailLaw& law, double tolerance, double growth) {
  if (!std::isfinite(t)) throw DomainError("choose_truncation: t must be finite");
  if (!(tolerance > 0.0)) throw DomainError("choose_truncation: tolerance must be positive");
  if (!(growth > 1.0)) throw DomainError("choose_truncation: growth must exceed 1");
  return scaled_truncation(law, tolerance, growth) / law.truncation();
}

double tanh_trapezoid(const std::function<double(double)>& f, double cut, const QuadratureConfig& q,
                      std::vector<double>* estimates) {
  q.validate();
  if (!(cut > 0.0) || !std::isfinite(cut)) throw DomainError("tanh_trapezoid: cut must be positive");
  const double u_max = u_range_for(cut, q.tolerance);
  auto node = [&](double u) {
    const double xi = cut / (1.0 + std::exp(-2.0 * u));
    if (!(xi > 0.0) || !(xi < cut)) return 0.0;
    return 0.5 * cut * sech_squared(u) * f(xi);
  };
  if (estimates) estimates->clear();
  double sum = 0.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  double last = previous;
  for (int level = 0; level <= q.max_halvings; ++level) {
    const double h = std::ldexp(q.initial_mesh, -level);
    const auto n = static_cast<long long>(std::floor(u_max / h));
    // Level 0 takes every multiple of h; finer levels add the odd multiples.
    const long long stride = level == 0 ? 1 : 2;
    const long long first = level == 0 ? -n : (n % 2 == 0 ? -n + 1 : -n);
    for (long long j = first; j <= n; j += stride) sum += node(static_cast<double>(j) * h);
    previous = last;
    last = h * sum;
    if (estimates) estimates->push_back(last);
    if (level + 1 >= kMinLevels && std::fabs(last - previous) < 0.5 * q.tolerance) return last;
  }
  throw ConvergenceError("tanh_trapezoid: no agreement within the halving budget", previous, last);
}

CdfOracle::CdfOracle(const TailLaw& law, const QuadratureConfig& q)
    : law_(law),
      q_(q),
      lambda_(std::pow(law.truncation(), -law.s())),
      mean_scaled_(lambda_ * law.s() / (1.0 - law.s())),
      cut_(0.0),
      u_range_(0.0),
      skip_threshold_(0.0),
      u_right_stop_(0.0) {
  q_.validate();
  cut_ = scaled_truncation(law_, q_.tolerance, q_.growth);
  u_range_ = u_range_for(cut_ / law_.truncation(), q_.tolerance);
  // Skipped nodes then move I by at most 2U * threshold = pi tol / 20.
  skip_threshold_ = std::numbers::pi * q_.tolerance / (40.0 * u_range_);
  u_right_stop_ = u_range_;
}

double CdfOracle::step(int index) const { return std::ldexp(q_.initial_mesh, -index); }

void CdfOracle::add_node(Nodes& nodes, double u) const {
  const double w = cut_ / (1.0 + std::exp(-2.0 * u));
  const double weight = 0.5 * cut_ * sech_squared(u);
  const cplx phi = std::exp(lambda_ * cached_unit_log_cf(law_.s(), w));
  nodes.w.push_back(w);
  nodes.weight.push_back(weight);
  nodes.cos_coef.push_back(weight * phi.imag() / w);
  nodes.sin_coef.push_back(weight * phi.real() / w);
  nodes.envelope.push_back(weight * std::abs(phi) / w);
}

CdfOracle::Level& CdfOracle::level(int index) {
  while (static_cast<int>(levels_.size()) <= index) {
    const int current = static_cast<int>(levels_.size());
    const double h = step(current);
    const auto n = static_cast<long long>(std::floor(u_range_ / h));
    // Level 0 takes every multiple of h; finer levels add the odd multiples.
    const long long stride = current == 0 ? 1 : 2;
    Level lv;
    const auto expected = static_cast<std::size_t>(std::min(u_right_stop_, u_range_) / (h * stride)) + 2;
    for (std::vector<double>* v : {&lv.right.w, &lv.right.weight, &lv.right.cos_coef, &lv.right.sin_coef,
                                   &lv.right.envelope, &lv.left.w, &lv.left.weight, &lv.left.cos_coef,
                                   &lv.left.sin_coef, &lv.left.envelope}) {
      v->reserve(expected);
    }
    for (long long j = current == 0 ? 0 : 1; j <= n; j += stride) {
      const double u = static_cast<double>(j) * h;
      if (u > u_right_stop_) break;
      add_node(lv.right, u);
      // For u > 0 the envelope decreases: |phi| falls monotonically along
      // the ray and sech^2(u) / w does too.
      if (u > 0.0 && lv.right.envelope.back() < skip_threshold_) {
        if (current == 0) u_right_stop_ = u;
        break;
      }
    }
    lv.next_left = -1;
    lv.last_left = (current == 0 || n % 2 != 0) ? -n : -n + 1;
    levels_.push_back(std::move(lv));
  }
  return levels_[static_cast<std::size_t>(index)];
}

void CdfOracle::extend_left(Level& lv, int index, double slope) {
  const double h = step(index);
  const long long stride = index == 0 ? 1 : 2;
  while (lv.next_left >= lv.last_left) {
    const double u = static_cast<double>(lv.next_left) * h;
    // The weight grows with u on this side, so once one node is negligible
    // for this slope all further ones are.
    if (0.5 * cut_ * sech_squared(u) * slope < skip_threshold_) return;
    add_node(lv.left, u);
    lv.next_left -= stride;
  }
}

void CdfOracle::accumulate(Level& lv, int index, double t_scaled, double& f_sum, double& d_sum) {
  const double slope = std::fabs(t_scaled) + mean_scaled_;
  extend_left(lv, index, slope);
  for (const Nodes* nodes : {&lv.right, &lv.left}) {
    const std::size_t count = nodes->w.size();
    for (std::size_t j = 0; j < count; ++j) {
      // The weight decreases along both halves.
      if (nodes->weight[j] * slope < skip_threshold_) break;
      if (nodes->envelope[j] < skip_threshold_) continue;
      const double theta = t_scaled * nodes->w[j];
      double sn = 0.0;
      double c = 0.0;
      fast_sincos(theta, sn, c);
      f_sum += nodes->cos_coef[j] * c - nodes->sin_coef[j] * sn;
      d_sum += nodes->w[j] * (nodes->cos_coef[j] * sn + nodes->sin_coef[j] * c);
    }
  }
}

CdfPoint CdfOracle::evaluate_point(double t, int min_levels) {
  if (!std::isfinite(t)) throw DomainError("evaluate_cdf: t must be finite");
  if (t <= 0.0) return {};
  // Exact key: laws with tiny R are searched at widths far below any fixed
  // rounding of t.
  const auto key = std::bit_cast<std::uint64_t>(t);
  if (auto it = cache_.find(key); it != cache_.end() && it->second.levels >= min_levels) return it->second;

  const double r = law_.truncation();
  const double t_scaled = t / r;
  double f_sum = 0.0;
  double d_sum = 0.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  double last = previous;
  int agreements = 0;
  for (int index = 0; index <= q_.max_halvings; ++index) {
    accumulate(level(index), index, t_scaled, f_sum, d_sum);
    const double h = step(index);
    previous = last;
    last = 0.5 - h * f_sum / std::numbers::pi;
    // Before the mesh resolves the oscillation two levels can agree by
    // chance, so agreement must hold twice running.
    agreements = std::fabs(last - previous) < 0.5 * q_.tolerance ? agreements + 1 : 0;
    if (index + 1 >= std::max(kMinLevels, min_levels) && agreements >= 2) {
      CdfPoint point;
      point.cdf = std::clamp(last, 0.0, 1.0);
      point.density = std::max(0.0, h * d_sum / (std::numbers::pi * r));
      point.levels = index + 1;
      if (cache_.size() > 4096) cache_.clear();
      cache_.insert_or_assign(key, point);
      return point;
    }
  }
  throw ConvergenceError("evaluate_cdf: trapezoid estimates did not settle within the halving budget", previous,
                         last);
}

std::vector<double> CdfOracle::level_estimates(double t, int levels) {
  if (levels < 1 || levels > q_.max_halvings + 1) throw DomainError("level_estimates: level count out of range");
  std::vector<double> out;
  const double t_scaled = t / law_.truncation();
  double f_sum = 0.0;
  double d_sum = 0.0;
  for (int index = 0; index < levels; ++index) {
    accumulate(level(index), index, t_scaled, f_sum, d_sum);
    out.push_back(0.5 - step(index) * f_sum / std::numbers::pi);
  }
  return out;
}

double evaluate_cdf(double t, const TailLaw& law, const QuadratureConfig& q) {
  if (!std::isfinite(t)) throw DomainError("evaluate_cdf: t must be finite");
  if (t <= 0.0) {
    q.validate();
    return 0.0;
  }
  CdfOracle oracle(law, q);
  return oracle.evaluate(t);
}

}  // namespace lps

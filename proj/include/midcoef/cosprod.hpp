#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace midcoef {

// sign * e^log_magnitude; sign 0 means the value is zero and log_magnitude
// is -inf.
template <class Real>
struct BasicSignedLog {
  int sign = 0;
  Real log_magnitude = -std::numeric_limits<Real>::infinity();

  Real value() const {
    using std::exp;
    return sign == 0 ? Real(0) : Real(sign) * exp(log_magnitude);
  }
};

using SignedLogValue = BasicSignedLog<double>;

// A factor cos(kt) counts as zero when it is no larger than the uncertainty
// of cos at the rounded argument kt.
template <class Real>
Real factor_zero_tolerance(int k, const Real& t) {
  using std::abs;
  const Real arg = abs(Real(k) * t);
  return Real(2) * std::numeric_limits<Real>::epsilon() * (arg > 1 ? arg : Real(1));
}

// f_n(t) = cos(t) cos(2t) ... cos(nt), accumulated factor by factor in log space.
template <class Real>
BasicSignedLog<Real> eval_product(int n, const Real& t) {
  using std::abs;
  using std::cos;
  using std::log;
  BasicSignedLog<Real> out;
  int sign = 1;
  Real acc = 0;
  for (int k = 1; k <= n; ++k) {
    const Real c = cos(Real(k) * t);
    if (abs(c) <= factor_zero_tolerance(k, t)) return out;
    if (c < 0) sign = -sign;
    acc += log(abs(c));
  }
  out.sign = sign;
  out.log_magnitude = acc;
  return out;
}

struct PeriodReduction {
  double t_reduced;  // in [-pi/2, pi/2]
  int sign_factor;   // f_n(t) = sign_factor * f_n(t_reduced)
};

// Removes the nearest multiple m*pi from t. Each pi-shift flips the sign of
// f_n by (-1)^(n(n+1)/2), so the sign is +1 whenever n = 0, 3 (mod 4).
PeriodReduction reduce_period(int n, double t);

// sum_{k=1}^n cos^2(kt) = n/2 + cos((n+1)t) sin(nt) / (2 sin t), with the
// limit value n where sin t vanishes.
double cos_square_sum(int n, double t);
// Same sum by direct accumulation.
double cos_square_sum_direct(int n, double t);

// ((1/n) sum cos^2(kt))^(n/2) >= |f_n(t)|.
double amgm_bound(int n, double t);
double amgm_log_bound(int n, double t);

// (1/2 + 1/(2n|sin t|))^(n/2) for 0 < |t| <= pi/2.
double sin_bound(int n, double t);
double sin_log_bound(int n, double t);

// 2|t|/pi <= |sin t| for |t| <= pi/2.
double jordan_lower(double t);

// prod_k (1 - (kt)^2/2 + (kt)^4/24) >= f_n(t) for |t| <= 1/n.
double case1_taylor_bound(int n, double t);

// (7/16)^(n/2) for n >= 8.
double case3_exponential_bound(int n);

enum class RegionTag { Inner, Case1, Case2, Case3 };

std::string to_string(RegionTag tag);

struct AnalysisRegion {
  RegionTag tag;
  double epsilon;
  double lower;  // |t| bounds of the region
  double upper;
  int quarter_index;  // floor(n/4), the comparison index used by Case2
};

inline constexpr double kDefaultEpsilon = 0.1;

// Inner: |t| < n^-(3/2-eps); Case1: up to 1/n; Case2: up to pi/n; Case3: up
// to pi/2. Points on a boundary belong to the lower-indexed case.
AnalysisRegion classify_region(int n, double t, double epsilon = kDefaultEpsilon);

// Outcome of one inequality over all sampled points. worst_margin is the
// largest observed (lhs - rhs) in the check's own units; <= 0 means it held.
struct BoundCheck {
  std::string name;
  std::string units;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  double worst_n = 0;
  double worst_t = 0;

  bool pass() const { return samples > 0 && violations == 0; }
};

struct BoundSuiteConfig {
  std::vector<int> ns{16, 32, 64, 128, 256};
  int grid = 2048;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 7;
  int monotonicity_samples = 1000;
  int periodicity_samples = 100;
};

struct BoundSuiteReport {
  std::vector<BoundCheck> checks;
  // max over n of |direct - closed form| / n for the cos^2 identity.
  double max_identity_error_over_n = 0;

  bool all_pass() const;
  const BoundCheck* find(const std::string& name) const;
};

// Sweeps every inequality and identity used to bound f_n away from t = 0
// over jittered grids drawn from `seed`.
BoundSuiteReport verify_lemma_bounds(const BoundSuiteConfig& config);

}  // namespace midcoef

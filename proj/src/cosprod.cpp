#include "midcoef/cosprod.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "midcoef/errors.hpp"

namespace midcoef {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_n(int n) {
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.25)) {
    throw DomainError("epsilon must lie in (0, 1/4), got " + std::to_string(epsilon));
  }
}

// Uniform double in [0, 1) from the top 53 bits; fixed across platforms.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// `count` points, one per cell of [lo, hi], jittered within the middle half of the cell.
std::vector<double> jittered_grid(double lo, double hi, int count, std::mt19937_64& rng) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double h = (hi - lo) / count;
  for (int i = 0; i < count; ++i) out.push_back(lo + (i + 0.5 + 0.5 * (unit(rng) - 0.5)) * h);
  return out;
}

void record(BoundCheck& check, double margin, double slack, int n, double t) {
  ++check.samples;
  if (margin > check.worst_margin) {
    check.worst_margin = margin;
    check.worst_n = n;
    check.worst_t = t;
  }
  if (margin > slack) ++check.violations;
}

}  // namespace

PeriodReduction reduce_period(int n, double t) {
  check_n(n);
  int quotient = 0;
  const double r = std::remquo(t, kPi, &quotient);
  const std::int64_t degree = static_cast<std::int64_t>(n) * (n + 1) / 2;
  const bool flip = (quotient & 1) != 0 && (degree & 1) != 0;
  return {r, flip ? -1 : 1};
}

double cos_square_sum(int n, double t) {
  check_n(n);
  const double s = std::sin(t);
  if (std::abs(s) <= kEps) return n;
  return 0.5 * n + std::cos((n + 1) * t) * std::sin(n * t) / (2.0 * s);
}

double cos_square_sum_direct(int n, double t) {
  check_n(n);
  double sum = 0;
  for (int k = 1; k <= n; ++k) {
    const double c = std::cos(k * t);
    sum += c * c;
  }
  return sum;
}

double amgm_log_bound(int n, double t) {
  const double mean = cos_square_sum_direct(n, t) / n;
  return 0.5 * n * std::log(mean);
}

double amgm_bound(int n, double t) { return std::exp(amgm_log_bound(n, t)); }

double sin_log_bound(int n, double t) {
  check_n(n);
  if (t == 0.0 || std::abs(t) > kPi / 2) {
    throw DomainError("sin_bound needs 0 < |t| <= pi/2, got t = " + std::to_string(t));
  }
  return 0.5 * n * std::log(0.5 + 1.0 / (2.0 * n * std::abs(std::sin(t))));
}

double sin_bound(int n, double t) { return std::exp(sin_log_bound(n, t)); }

double jordan_lower(double t) {
  if (std::abs(t) > kPi / 2) throw DomainError("jordan_lower needs |t| <= pi/2");
  return 2.0 * std::abs(t) / kPi;
}

double case1_taylor_bound(int n, double t) {
  check_n(n);
  if (std::abs(t) > 1.0 / n) throw DomainError("case1_taylor_bound needs |t| <= 1/n");
  double product = 1;
  for (int k = 1; k <= n; ++k) {
    const double x2 = (k * t) * (k * t);
    product *= 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
  }
  return product;
}

double case3_exponential_bound(int n) {
  if (n < 8) throw DomainError("case3_exponential_bound needs n >= 8, got " + std::to_string(n));
  return std::pow(7.0 / 16.0, 0.5 * n);
}

std::string to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::Inner: return "Inner";
    case RegionTag::Case1: return "Case1";
    case RegionTag::Case2: return "Case2";
    case RegionTag::Case3: return "Case3";
  }
  return "?";
}

AnalysisRegion classify_region(int n, double t, double epsilon) {
  check_n(n);
  check_epsilon(epsilon);
  const double a = std::abs(t);
  if (a > kPi / 2) throw DomainError("classify_region needs |t| <= pi/2");
  const double window = std::pow(static_cast<double>(n), -(1.5 - epsilon));
  const double inv = 1.0 / n;
  const double pin = kPi / n;
  const int h = n / 4;
  if (a < window) return {RegionTag::Inner, epsilon, 0.0, window, h};
  if (a <= inv) return {RegionTag::Case1, epsilon, window, inv, h};
  if (a <= pin) return {RegionTag::Case2, epsilon, inv, pin, h};
  return {RegionTag::Case3, epsilon, pin, kPi / 2, h};
}

bool BoundSuiteReport::all_pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass(); });
}

const BoundCheck* BoundSuiteReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

BoundSuiteReport verify_lemma_bounds(const BoundSuiteConfig& config) {
  check_epsilon(config.epsilon);
  if (config.ns.empty()) throw DomainError("no n values to check");
  if (config.grid < 1) throw DomainError("grid must be positive");
  for (int n : config.ns) check_n(n);

  std::mt19937_64 rng(config.seed);
  BoundSuiteReport report;
  BoundCheck identity{"cos_square_identity", "abs error - 1e-11*n"};
  BoundCheck amgm{"amgm_bound", "log|f| - log bound"};
  BoundCheck sinb{"sin_bound", "log|f| - log bound"};
  BoundCheck jordan{"jordan_inequality", "2|t|/pi - |sin t|"};
  BoundCheck taylor{"case1_taylor_bound", "f - bound"};
  BoundCheck case3{"case3_exponential_bound", "log|f| - (n/2) log(7/16)"};
  BoundCheck monotone{"monotonicity_in_n", "log|f_n| - log|f_m|"};
  BoundCheck period{"periodicity", "relative difference - 1e-12"};

  for (int n : config.ns) {
    const double log_slack = 64 * kEps * n;
    for (double t : jittered_grid(-kPi / 2, kPi / 2, config.grid, rng)) {
      if (std::abs(std::sin(t)) >= 1e-3) {
        const double err = std::abs(cos_square_sum_direct(n, t) - cos_square_sum(n, t));
        report.max_identity_error_over_n = std::max(report.max_identity_error_over_n, err / n);
        record(identity, err - 1e-11 * n, 0.0, n, t);
      }
      const SignedLogValue f = eval_product(n, t);
      const double lf = f.log_magnitude;
      record(amgm, f.sign == 0 ? -INFINITY : lf - amgm_log_bound(n, t), log_slack, n, t);
      record(sinb, f.sign == 0 ? -INFINITY : lf - sin_log_bound(n, t), log_slack, n, t);
      record(jordan, jordan_lower(t) - std::abs(std::sin(t)), 2 * kEps * std::abs(std::sin(t)), n, t);
    }
    for (double t : jittered_grid(-1.0 / n, 1.0 / n, config.grid, rng)) {
      record(taylor, eval_product(n, t).value() - case1_taylor_bound(n, t), 16 * kEps * n, n, t);
    }
    if (n >= 8) {
      const double log_bound = std::log(case3_exponential_bound(n));
      for (double t : jittered_grid(kPi / n, kPi / 2, config.grid, rng)) {
        const SignedLogValue f = eval_product(n, t);
        record(case3, f.sign == 0 ? -INFINITY : f.log_magnitude - log_bound, log_slack, n, t);
      }
    }
  }
  // Jordan equality at 0 and the endpoints.
  for (double t : {-kPi / 2, 0.0, kPi / 2}) {
    const double gap = std::abs(jordan_lower(t) - std::abs(std::sin(t)));
    record(jordan, gap, 0.0, 0, t);
  }

  const int n_max = *std::max_element(config.ns.begin(), config.ns.end());
  for (int i = 0; i < config.monotonicity_samples; ++i) {
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max));
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const double t = -kPi / 2 + kPi * unit(rng);
    const SignedLogValue fn = eval_product(n, t);
    const SignedLogValue fm = eval_product(m, t);
    double margin = -INFINITY;
    if (fm.sign == 0 && fn.sign != 0) {
      margin = INFINITY;
    } else if (fn.sign != 0) {
      margin = fn.log_magnitude - fm.log_magnitude;
    }
    record(monotone, margin, 0.0, n, t);
  }

  // Checked in long double so the rounding of t + pi stays far below 1e-12.
  std::vector<int> periodic{3, 4, 7, 8, 11, 12};
  for (int n : config.ns) {
    if ((n % 4 == 0 || n % 4 == 3) && std::find(periodic.begin(), periodic.end(), n) == periodic.end()) {
      periodic.push_back(n);
    }
  }
  const long double pi_l = std::numbers::pi_v<long double>;
  for (int n : periodic) {
    for (int i = 0; i < config.periodicity_samples; ++i) {
      const long double t = -pi_l + 2 * pi_l * static_cast<long double>(unit(rng));
      const auto a = eval_product<long double>(n, t);
      const auto b = eval_product<long double>(n, t + pi_l);
      double margin = -INFINITY;
      if (a.sign != b.sign) {
        margin = INFINITY;
      } else if (a.sign != 0) {
        margin = static_cast<double>(std::abs(std::expm1(b.log_magnitude - a.log_magnitude))) - 1e-12;
      }
      record(period, margin, 0.0, n, static_cast<double>(t));
    }
  }

  report.checks = {identity, amgm, sinb, jordan, taylor, case3, monotone, period};
  return report;
}

}  // namespace midcoef

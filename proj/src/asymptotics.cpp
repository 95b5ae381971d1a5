#include "midcoef/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "midcoef/errors.hpp"
#include "midcoef/logdp.hpp"
#include "midcoef/spectrum.hpp"

namespace midcoef {
namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kEpsL = std::numeric_limits<long double>::epsilon();
constexpr double kSwitch = 3.0;

// erf(x) = (2/sqrt(pi)) e^(-x^2) sum_k 2^k x^(2k+1) / (1*3*...*(2k+1)), x >= 0.
long double erf_series(long double x) {
  const long double x2 = x * x;
  long double term = x;
  long double sum = x;
  for (int k = 1; k < 500; ++k) {
    term *= 2 * x2 / (2 * k + 1);
    sum += term;
    if (term <= kEpsL * sum) break;
  }
  return 2 / std::sqrt(kPiL) * std::exp(-x2) * sum;
}

// erfc(x) = e^(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), x > 0,
// evaluated with the modified Lentz method.
long double erfc_fraction(long double x) {
  constexpr long double tiny = 1e-4000L;
  long double f = x;
  long double c = f;
  long double d = 0;
  for (int k = 1; k < 5000; ++k) {
    const long double a = k / 2.0L;
    d = x + a * d;
    if (d == 0) d = tiny;
    c = x + a / c;
    if (c == 0) c = tiny;
    d = 1 / d;
    const long double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1) <= kEpsL) break;
  }
  return std::exp(-x * x) / (std::sqrt(kPiL) * f);
}

void check_n(int n) {
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
}

// A handful of long double roundings in the closed forms.
constexpr double kFormulaError = 16 * 0x1p-64;

}  // namespace

long double erf_ld(long double x) {
  if (std::isnan(x)) return x;
  if (x < 0) return -erf_ld(-x);
  if (x < kSwitch) return erf_series(x);
  return 1 - erfc_fraction(x);
}

long double erfc_ld(long double x) {
  if (std::isnan(x)) return x;
  if (x < 0) return 2 - erfc_ld(-x);
  if (x < kSwitch) return 1 - erf_series(x);
  return erfc_fraction(x);
}

ExtendedFloat conjecture_estimate(int n) {
  check_n(n);
  const long double nl = n;
  const long double scale = std::sqrt(6 / kPiL) / (nl * std::sqrt(nl));
  return ExtendedFloat::from(scale, n, kFormulaError);
}

double gaussian_variance_constant(int n) {
  const long double nl = n;
  return static_cast<double>(nl * (nl + 1) * (2 * nl + 1) / 12);
}

ExtendedFloat refined_estimate(int n) {
  check_n(n);
  const long double nl = n;
  const long double c = nl * (nl + 1) * (2 * nl + 1) / 12;
  const long double scale = std::sqrt(kPiL / c) / kPiL;
  return ExtendedFloat::from(scale, n, kFormulaError);
}

double gaussian_integral(double c) {
  if (!(c > 0)) throw DomainError("gaussian_integral needs C > 0");
  return std::sqrt(std::numbers::pi / c);
}

double truncated_gaussian_ratio(double c, double a, double b) {
  if (!(c > 0) || !(a < 0) || !(b > 0)) throw DomainError("truncated_gaussian_ratio needs C > 0 and a < 0 < b");
  const long double root = std::sqrt(static_cast<long double>(c));
  return static_cast<double>((erf_ld(b * root) + erf_ld(-a * root)) / 2);
}

long double truncated_gaussian_tail(double c, double a, double b) {
  if (!(c > 0) || !(a < 0) || !(b > 0)) throw DomainError("truncated_gaussian_tail needs C > 0 and a < 0 < b");
  const long double root = std::sqrt(static_cast<long double>(c));
  return (erfc_ld(b * root) + erfc_ld(-a * root)) / 2;
}

double laplace_window(int n, double epsilon) {
  check_n(n);
  if (!(epsilon > 0 && epsilon < 0.25)) throw DomainError("epsilon must lie in (0, 1/4)");
  return std::pow(static_cast<double>(n), -(1.5 - epsilon));
}

std::string to_string(ValueSource source) { return source == ValueSource::Exact ? "exact" : "logdp"; }

ValueSource parse_value_source(const std::string& text) {
  if (text == "exact") return ValueSource::Exact;
  if (text == "logdp") return ValueSource::LogDp;
  throw DomainError("unknown mode '" + text + "' (expected exact or logdp)");
}

RatioRecord make_ratio_record(int n, const ExtendedFloat& s, ValueSource source) {
  const ExtendedFloat estimate = conjecture_estimate(n);
  const ExtendedFloat refined = refined_estimate(n);
  RatioRecord r;
  r.n = n;
  r.source = source;
  r.s_log2 = static_cast<double>(s.log2());
  r.estimate_log2 = static_cast<double>(estimate.log2());
  r.refined_log2 = static_cast<double>(refined.log2());
  r.ratio_conjecture = static_cast<double>(std::exp2(log2_ratio(s, estimate)));
  r.ratio_refined = static_cast<double>(std::exp2(log2_ratio(s, refined)));
  r.s_error_bound = s.error_bound();
  return r;
}

std::vector<RatioRecord> ratio_table(const std::vector<int>& n_values, ValueSource source, int precision_bits) {
  for (int n : n_values) {
    require_middle_term(n);
    if (source == ValueSource::Exact && n > kDefaultExactLimit) {
      throw DomainError("n = " + std::to_string(n) + " exceeds the exact limit " +
                        std::to_string(kDefaultExactLimit));
    }
  }
  std::vector<RatioRecord> out;
  out.reserve(n_values.size());
  for (int n : n_values) {
    const ExtendedFloat s = source == ValueSource::Exact
                                ? ExtendedFloat::from_integer(middle_coefficient(n))
                                : middle_coefficient_log2(n, precision_bits);
    out.push_back(make_ratio_record(n, s, source));
  }
  return out;
}

}  // namespace midcoef

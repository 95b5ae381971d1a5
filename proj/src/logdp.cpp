#include "midcoef/logdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <mpfr.h>

#include "midcoef/errors.hpp"
#include "midcoef/spectrum.hpp"

namespace midcoef {
namespace {

// Once the scaled row could exceed 2^kRescaleTrigger it is multiplied by
// 2^-kRescaleBits. With n <= kLogDpLimit this happens at most once, and the
// smallest entry (c_0 = 1) stays a normal number.
constexpr int kRescaleTrigger = 16000;
constexpr int kRescaleBits = 8192;

void check_precision(int precision_bits) {
  if (precision_bits < kMinLogDpPrecision || precision_bits > kMaxLogDpPrecision) {
    throw DomainError("precision_bits must lie in [" + std::to_string(kMinLogDpPrecision) + ", " +
                      std::to_string(kMaxLogDpPrecision) + "], got " + std::to_string(precision_bits));
  }
}

// Round-to-nearest onto `keep` bits of a native type with `native` bits
// (Veltkamp splitting); identity when keep == native.
template <class Real>
struct Rounder {
  explicit Rounder(int native, int keep)
      : split(keep < native ? static_cast<Real>(std::ldexp(1.0L, native - keep)) + 1 : 0) {}
  Real operator()(Real x) const {
    if (split == 0) return x;
    const Real c = x * split;
    return c - (c - x);
  }
  Real split;
};

template <class Real>
long double run_row(int n, int native_bits, int precision_bits, int trigger_bits, int shift_bits,
                    std::int64_t& row_exponent) {
  const std::int64_t middle = spectrum_degree(n) / 2;
  std::vector<Real> row(static_cast<std::size_t>(middle + 1), Real(0));
  row[0] = 1;
  const Rounder<Real> round(native_bits, precision_bits);
  const Real down = static_cast<Real>(std::ldexp(1.0L, -shift_bits));
  row_exponent = 0;
  for (int k = 1; k <= n; ++k) {
    // Entries are bounded by 2^(k - row_exponent) after this factor.
    if (k - row_exponent > trigger_bits) {
      for (auto& v : row) v *= down;
      row_exponent += shift_bits;
    }
    const std::int64_t top = std::min<std::int64_t>(middle, spectrum_degree(k));
    Real* c = row.data();
    if (round.split == 0) {
      for (std::int64_t j = top; j >= k; --j) c[j] += c[j - k];
    } else {
      for (std::int64_t j = top; j >= k; --j) c[j] = round(c[j] + c[j - k]);
    }
  }
  return static_cast<long double>(row[static_cast<std::size_t>(middle)]);
}

// log2(exact / approx) evaluated in 256-bit MPFR.
double log2_discrepancy(const mpz_class& exact, const ExtendedFloat& approx) {
  mpfr_t a, b;
  mpfr_init2(a, 256);
  mpfr_init2(b, 256);
  mpfr_set_z(a, exact.get_mpz_t(), MPFR_RNDN);
  mpfr_set_ld(b, approx.mantissa(), MPFR_RNDN);
  mpfr_mul_2si(b, b, static_cast<long>(approx.exponent()), MPFR_RNDN);
  mpfr_div(a, a, b, MPFR_RNDN);
  mpfr_log2(a, a, MPFR_RNDN);
  const double out = mpfr_get_d(a, MPFR_RNDN);
  mpfr_clear(a);
  mpfr_clear(b);
  return out;
}

}  // namespace

double logdp_error_bound(int n, int precision_bits) {
  check_precision(precision_bits);
  const long double u = std::ldexp(1.0L, 1 - precision_bits);
  long double bound = std::expm1(static_cast<long double>(n) * std::log1p(u));
  if (precision_bits > std::numeric_limits<long double>::digits) {
    // binary128 -> long double rounding
    bound += ExtendedFloat::kUnitRoundoff * (1.0L + bound);
  }
  // Slack for the evaluation of the bound itself.
  return static_cast<double>(bound * (1.0L + 0x1p-40L));
}

ExtendedFloat middle_coefficient_log2(int n, int precision_bits) {
  return detail::middle_coefficient_log2_rescaled(n, precision_bits, kRescaleTrigger, kRescaleBits);
}

ExtendedFloat detail::middle_coefficient_log2_rescaled(int n, int precision_bits, int trigger_bits,
                                                       int shift_bits) {
  require_middle_term(n);
  check_precision(precision_bits);
  if (n > kLogDpLimit) {
    throw DomainError("n must be at most " + std::to_string(kLogDpLimit) + " in logdp mode");
  }
  std::int64_t row_exponent = 0;
  long double value = 0;
  constexpr int kLongDoubleBits = std::numeric_limits<long double>::digits;
  if (precision_bits <= kLongDoubleBits) {
    value = run_row<long double>(n, kLongDoubleBits, precision_bits, trigger_bits, shift_bits, row_exponent);
  } else {
    value = run_row<__float128>(n, 113, precision_bits, trigger_bits, shift_bits, row_exponent);
  }
  return ExtendedFloat::from(value, row_exponent, logdp_error_bound(n, precision_bits));
}

std::vector<LogDpCheck> validate_against_exact(int n_max, int precision_bits) {
  check_precision(precision_bits);
  std::vector<LogDpCheck> report;
  if (n_max < 3) return report;
  for (const auto& [n, exact] : middle_coefficient_sequence(n_max)) {
    const ExtendedFloat approx = middle_coefficient_log2(n, precision_bits);
    const double discrepancy = log2_discrepancy(exact, approx);
    const double allowed = std::log1p(approx.error_bound()) / std::log(2.0);
    report.push_back({n, discrepancy, approx.error_bound(), std::abs(discrepancy) <= allowed});
  }
  return report;
}

}  // namespace midcoef

#include "midcoef/extended_float.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "midcoef/errors.hpp"

namespace midcoef {

double compose_relative_errors(double e1, double e2, long double u) {
  // Expanded so that tiny terms are not absorbed by a leading 1.
  const long double a = e1;
  const long double b = e2;
  const long double total = a + b + u + a * b + (a + b) * u + a * b * u;
  // The narrowing to double may round down; step up once.
  return std::nextafter(static_cast<double>(total), std::numeric_limits<double>::infinity());
}

ExtendedFloat ExtendedFloat::from(long double value, std::int64_t exponent, double error_bound) {
  if (!std::isfinite(value) || value < 0.0L) {
    throw DomainError("ExtendedFloat needs a finite nonnegative value");
  }
  if (error_bound < 0.0 || std::isnan(error_bound)) throw DomainError("negative error bound");
  ExtendedFloat x;
  x.error_bound_ = error_bound;
  if (value == 0.0L) return x;
  int e = 0;
  const long double m = std::frexp(value, &e);  // m in [0.5, 1)
  x.mantissa_ = 2.0L * m;
  x.exponent_ = exponent + e - 1;
  return x;
}

ExtendedFloat ExtendedFloat::from_integer(const mpz_class& z) {
  if (sgn(z) < 0) throw DomainError("ExtendedFloat needs a nonnegative integer");
  if (sgn(z) == 0) return {};
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  const std::size_t shift = bits > 64 ? bits - 64 : 0;
  mpz_class top = z >> shift;
  std::uint64_t word = 0;
  mpz_export(&word, nullptr, -1, sizeof(word), 0, 0, top.get_mpz_t());
  const bool exact = shift == 0 || mpz_scan1(z.get_mpz_t(), 0) >= shift;
  return from(static_cast<long double>(word), static_cast<std::int64_t>(shift), exact ? 0.0 : 0x1p-63);
}

long double ExtendedFloat::log2() const {
  if (is_zero()) return -std::numeric_limits<long double>::infinity();
  return static_cast<long double>(exponent_) + std::log2(mantissa_);
}

long double ExtendedFloat::to_long_double() const {
  if (is_zero()) return 0.0L;
  if (exponent_ > std::numeric_limits<long double>::max_exponent) {
    return std::numeric_limits<long double>::infinity();
  }
  if (exponent_ < std::numeric_limits<long double>::min_exponent - 70) return 0.0L;
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

ExtendedFloat ExtendedFloat::with_error_bound(double bound) const {
  if (bound < 0.0 || std::isnan(bound)) throw DomainError("negative error bound");
  ExtendedFloat x = *this;
  x.error_bound_ = bound;
  return x;
}

ExtendedFloat ExtendedFloat::scaled(std::int64_t power_of_two) const {
  ExtendedFloat x = *this;
  if (!is_zero()) x.exponent_ += power_of_two;
  return x;
}

std::string ExtendedFloat::to_string(int digits) const {
  if (digits < 1) digits = 1;
  if (is_zero()) return "0";
  // log10(value) split into an integer decade and a mantissa in [1, 10).
  const long double log10_value =
      static_cast<long double>(exponent_) * 0.301029995663981195213738894724493027L +
      std::log10(mantissa_);
  long double decade = std::floor(log10_value);
  long double m10 = std::pow(10.0L, log10_value - decade);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits - 1, m10);
  if (buf[0] == '1' && buf[1] == '0') {  // rounded up to 10.000...
    decade += 1.0L;
    m10 /= 10.0L;
    std::snprintf(buf, sizeof buf, "%.*Lf", digits - 1, m10);
  }
  return std::string(buf) + "e" + (decade >= 0 ? "+" : "") + std::to_string(static_cast<long long>(decade));
}

ExtendedFloat operator*(const ExtendedFloat& a, const ExtendedFloat& b) {
  const double err = compose_relative_errors(a.error_bound_, b.error_bound_);
  if (a.is_zero() || b.is_zero()) return ExtendedFloat{}.with_error_bound(err);
  return ExtendedFloat::from(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_, err);
}

ExtendedFloat operator/(const ExtendedFloat& a, const ExtendedFloat& b) {
  if (b.is_zero()) throw DomainError("ExtendedFloat division by zero");
  // 1/(1-e) - 1 <= e/(1-e) for the divisor's share.
  const double eb = b.error_bound_ >= 1.0 ? std::numeric_limits<double>::infinity()
                                          : b.error_bound_ / (1.0 - b.error_bound_);
  const double err = compose_relative_errors(a.error_bound_, eb);
  if (a.is_zero()) return ExtendedFloat{}.with_error_bound(err);
  return ExtendedFloat::from(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_, err);
}

long double log2_ratio(const ExtendedFloat& a, const ExtendedFloat& b) {
  if (a.is_zero() || b.is_zero()) throw DomainError("log2_ratio of zero");
  return static_cast<long double>(a.exponent() - b.exponent()) + std::log2(a.mantissa() / b.mantissa());
}

}  // namespace midcoef

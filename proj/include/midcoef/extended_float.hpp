#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace midcoef {

// mantissa * 2^exponent with mantissa in [1, 2) (or exactly 0), plus an upper
// bound on the relative error of the represented value. Arithmetic grows the
// bound pessimistically; it never shrinks.
class ExtendedFloat {
 public:
  // Unit roundoff of the long double mantissa.
  static constexpr long double kUnitRoundoff = 0x1p-64L;

  ExtendedFloat() = default;

  // Normalizes `value * 2^exponent`. value must be finite and nonnegative.
  static ExtendedFloat from(long double value, std::int64_t exponent = 0, double error_bound = 0.0);
  // Nearest 64-bit-mantissa value at or below z (error <= 2^-63 when inexact).
  static ExtendedFloat from_integer(const mpz_class& z);

  long double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  double error_bound() const noexcept { return error_bound_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0L; }

  // -inf for zero.
  long double log2() const;
  // Overflows to inf beyond the long double range.
  long double to_long_double() const;

  ExtendedFloat with_error_bound(double bound) const;
  ExtendedFloat scaled(std::int64_t power_of_two) const;

  // Scientific decimal text with `digits` significant digits, e.g. "1.40000000000e+1".
  std::string to_string(int digits = 12) const;

  friend ExtendedFloat operator*(const ExtendedFloat& a, const ExtendedFloat& b);
  friend ExtendedFloat operator/(const ExtendedFloat& a, const ExtendedFloat& b);

 private:
  long double mantissa_ = 0.0L;
  std::int64_t exponent_ = 0;
  double error_bound_ = 0.0;
};

// log2(a / b) without forming either value.
long double log2_ratio(const ExtendedFloat& a, const ExtendedFloat& b);

// (1+e1)(1+e2)(1+u) - 1, rounded upward enough to stay an upper bound.
double compose_relative_errors(double e1, double e2, long double u = ExtendedFloat::kUnitRoundoff);

}  // namespace midcoef

#pragma once

#include <vector>

#include "midcoef/extended_float.hpp"

namespace midcoef {

inline constexpr int kDefaultLogDpPrecision = 64;
inline constexpr int kMinLogDpPrecision = 32;
// Widest working mantissa available (binary128).
inline constexpr int kMaxLogDpPrecision = 113;
// Keeps every DP entry inside the normal range of the 15-bit exponent.
inline constexpr int kLogDpLimit = 20000;

// S(n) from the subset-sum DP run in floating point rounded to
// `precision_bits` after every addition. The row shares one binary exponent
// and is rescaled by an exact power of two when it grows too large.
ExtendedFloat middle_coefficient_log2(int n, int precision_bits = kDefaultLogDpPrecision);

// Relative error bound attached to middle_coefficient_log2(n, precision_bits).
// Every entry is a sum of nonnegative terms reached through at most n rounded
// additions, so the bound is (1 + 2^(1-p))^n - 1.
double logdp_error_bound(int n, int precision_bits);

struct LogDpCheck {
  int n;
  double log2_discrepancy;  // log2(exact) - log2(approx)
  double error_bound;
  bool pass;
};

// Compares middle_coefficient_log2 against the exact DP for every n <= n_max
// with a middle term.
std::vector<LogDpCheck> validate_against_exact(int n_max, int precision_bits = kDefaultLogDpPrecision);

namespace detail {
// middle_coefficient_log2 with an explicit rescale policy: once entries could
// exceed 2^trigger_bits the row is multiplied by 2^-shift_bits.
ExtendedFloat middle_coefficient_log2_rescaled(int n, int precision_bits, int trigger_bits, int shift_bits);
}  // namespace detail

}  // namespace midcoef

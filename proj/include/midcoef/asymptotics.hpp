#pragma once

#include <string>
#include <vector>

#include "midcoef/extended_float.hpp"

namespace midcoef {

// erf by the positive-term series (|x| < 3) and erfc by its continued
// fraction (|x| >= 3); about 1e-18 absolute in long double.
long double erf_ld(long double x);
long double erfc_ld(long double x);

// sqrt(6/pi) * 2^n * n^(-3/2).
ExtendedFloat conjecture_estimate(int n);

// (2^n/pi) * sqrt(pi/C) with C = n(n+1)(2n+1)/12: the Gaussian main term
// before n(n+1)(2n+1) is replaced by 2n^3.
ExtendedFloat refined_estimate(int n);

// n(n+1)(2n+1)/12.
double gaussian_variance_constant(int n);

// Integral of e^(-C t^2) over the real line, sqrt(pi/C).
double gaussian_integral(double c);

// Integral of e^(-C t^2) over [a, b] divided by sqrt(pi/C),
// (erf(b sqrt C) + erf(-a sqrt C)) / 2. Requires C > 0 and a < 0 < b.
double truncated_gaussian_ratio(double c, double a, double b);
// 1 - truncated_gaussian_ratio, from erfc so it keeps relative accuracy.
long double truncated_gaussian_tail(double c, double a, double b);

// n^-(3/2 - eps) for 0 < eps < 1/4.
double laplace_window(int n, double epsilon);

enum class ValueSource { Exact, LogDp };

std::string to_string(ValueSource source);
ValueSource parse_value_source(const std::string& text);

struct RatioRecord {
  int n = 0;
  double s_log2 = 0;
  double estimate_log2 = 0;
  double refined_log2 = 0;
  double ratio_conjecture = 0;  // S / conjecture_estimate
  double ratio_refined = 0;     // S / refined_estimate
  ValueSource source = ValueSource::Exact;
  double s_error_bound = 0;
};

RatioRecord make_ratio_record(int n, const ExtendedFloat& s, ValueSource source);

// One record per n, in input order. Every n must be 0 or 3 mod 4; exact mode
// is limited to the exact DP limit.
std::vector<RatioRecord> ratio_table(const std::vector<int>& n_values, ValueSource source,
                                     int precision_bits = 64);

}  // namespace midcoef

#pragma once

#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "midcoef/extended_float.hpp"

namespace midcoef {

using HighPrecision = boost::multiprecision::mpfr_float;

inline constexpr int kDefaultQuadraturePrecision = 64;
inline constexpr int kDefaultNodesPerPanel = 16;

struct QuadratureResult {
  HighPrecision value;
  // 2|Q(2m) - Q(m)| plus a rounding allowance for the m-node sum `value`.
  double error_estimate = 0;
  int panels = 0;
  int precision_bits = 0;
  int nodes_per_panel = 0;
};

// Zeros (2j+1)pi/(2k), k = 1..n, strictly inside (lo, hi), sorted and
// deduplicated. The interval must lie within [-pi/2, pi/2].
std::vector<double> zeros_of_factors(int n, double lo, double hi);

// Integral of f_n over [-pi/2, pi/2]. Panels break at every factor zero and
// are subdivided to width at most pi/(2n); each panel uses an m-point
// Gauss-Legendre rule and is re-summed with 2m points for the error estimate.
// precision_bits <= 64 runs in long double, wider in MPFR.
QuadratureResult integrate_product(int n, int precision_bits = kDefaultQuadraturePrecision,
                                   int nodes_per_panel = kDefaultNodesPerPanel);

// Twice the integral over [0, pi/2]; f_n is even.
QuadratureResult integrate_product_half(int n, int precision_bits = kDefaultQuadraturePrecision,
                                        int nodes_per_panel = kDefaultNodesPerPanel);

// S(n) = (2^n / pi) * integral of f_n over [-pi/2, pi/2], n = 0, 3 (mod 4).
ExtendedFloat s_via_quadrature(int n, int precision_bits = kDefaultQuadraturePrecision,
                               int nodes_per_panel = kDefaultNodesPerPanel);

}  // namespace midcoef

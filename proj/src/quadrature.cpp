#include "midcoef/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "midcoef/cosprod.hpp"
#include "midcoef/errors.hpp"

namespace midcoef {
namespace {

// p/q in units of pi, q > 0, reduced.
struct Fraction {
  std::int64_t p;
  std::int64_t q;
};

bool less(const Fraction& a, const Fraction& b) { return a.p * b.q < b.p * a.q; }
bool same(const Fraction& a, const Fraction& b) { return a.p * b.q == b.p * a.q; }

// Factor zeros (2j+1)/(2k) strictly inside (-1/2, 1/2), in pi units.
std::vector<Fraction> zero_fractions(int n) {
  std::vector<Fraction> out;
  for (std::int64_t k = 1; k <= n; ++k) {
    for (std::int64_t p = 1 - k; p < k; ++p) {
      if ((p & 1) == 0) continue;
      const std::int64_t g = std::gcd(p < 0 ? -p : p, 2 * k);
      out.push_back({p / g, 2 * k / g});
    }
  }
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end(), same), out.end());
  return out;
}

// Breakpoints from `lo` to 1/2 (lo is -1/2 or 0), each gap then split into
// equal pieces no wider than 1/(2n).
struct Panel {
  Fraction a;
  Fraction b;
  std::int64_t pieces;
};

std::vector<Panel> make_panels(int n, Fraction lo) {
  std::vector<Fraction> points{lo};
  for (const auto& z : zero_fractions(n)) {
    if (less(lo, z)) points.push_back(z);
  }
  points.push_back({1, 2});
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Fraction& a = points[i];
    const Fraction& b = points[i + 1];
    // ceil(2n * (b - a))
    const std::int64_t num = 2 * static_cast<std::int64_t>(n) * (b.p * a.q - a.p * b.q);
    const std::int64_t den = a.q * b.q;
    panels.push_back({a, b, std::max<std::int64_t>(1, (num + den - 1) / den)});
  }
  return panels;
}

template <class Real>
Real pi_value() {
  if constexpr (std::is_same_v<Real, long double>) {
    return std::numbers::pi_v<long double>;
  } else {
    return boost::math::constants::pi<Real>();
  }
}

template <class Real>
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// m-point Gauss-Legendre on [-1, 1] by Newton iteration on P_m.
template <class Real>
GaussRule<Real> gauss_legendre(int m) {
  using std::abs;
  GaussRule<Real> rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  const Real tol = 4 * std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Real x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1;
      Real p1 = x;
      for (int j = 2; j <= m; ++j) {
        Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= tol) break;
    }
    // Recompute P_m' at the converged node.
    Real p0 = 1;
    Real p1 = x;
    for (int j = 2; j <= m; ++j) {
      Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1);
    const Real w = 2 / ((1 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

template <class Real>
struct RuleSum {
  Real value = 0;
  Real magnitude = 0;  // same rule applied to |f_n|
};

// Panels are summed left to right so the result is reproducible.
template <class Real>
RuleSum<Real> apply_rule(int n, const std::vector<Panel>& panels, const GaussRule<Real>& rule) {
  using std::abs;
  const Real pi = pi_value<Real>();
  RuleSum<Real> total;
  for (const auto& panel : panels) {
    const Real a = pi * Real(panel.a.p) / Real(panel.a.q);
    const Real b = pi * Real(panel.b.p) / Real(panel.b.q);
    const Real h = (b - a) / Real(panel.pieces);
    for (std::int64_t piece = 0; piece < panel.pieces; ++piece) {
      const Real left = a + Real(piece) * h;
      const Real mid = left + h / 2;
      Real sum = 0;
      Real mag = 0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real f = eval_product<Real>(n, mid + h / 2 * rule.nodes[i]).value();
        sum += rule.weights[i] * f;
        mag += rule.weights[i] * abs(f);
      }
      total.value += h / 2 * sum;
      total.magnitude += h / 2 * mag;
    }
  }
  return total;
}

std::int64_t count_panels(const std::vector<Panel>& panels) {
  std::int64_t total = 0;
  for (const auto& p : panels) total += p.pieces;
  return total;
}

// Sets the MPFR default precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits) : saved_(HighPrecision::default_precision()) {
    HighPrecision::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2);
  }
  ~PrecisionScope() { HighPrecision::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

template <class Real>
QuadratureResult integrate_with(int n, int nodes, const std::vector<Panel>& panels, int scale) {
  using std::abs;
  const auto coarse = apply_rule(n, panels, gauss_legendre<Real>(nodes));
  const auto fine = apply_rule(n, panels, gauss_legendre<Real>(2 * nodes));
  const Real rounding =
      Real(n + 2 * nodes + 16) * std::numeric_limits<Real>::epsilon() * fine.magnitude * Real(scale);
  // Twice the refinement gap: the 2m-point sum carries its own (smaller) error.
  const Real estimate = 2 * abs(fine.value - coarse.value) * Real(scale) + rounding;
  QuadratureResult result;
  result.value = HighPrecision(coarse.value * Real(scale));
  result.error_estimate = static_cast<double>(estimate);
  result.panels = static_cast<int>(count_panels(panels));
  result.nodes_per_panel = nodes;
  // Round the estimate up past any loss in the double conversion.
  result.error_estimate = std::nextafter(result.error_estimate, std::numeric_limits<double>::infinity());
  return result;
}

QuadratureResult integrate(int n, int precision_bits, int nodes, bool half) {
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
  if (precision_bits < 53) throw DomainError("precision_bits must be at least 53");
  if (nodes < 4) throw DomainError("nodes_per_panel must be at least 4");
  const auto panels = make_panels(n, half ? Fraction{0, 1} : Fraction{-1, 2});
  const int scale = half ? 2 : 1;
  QuadratureResult result;
  if (precision_bits <= std::numeric_limits<long double>::digits) {
    result = integrate_with<long double>(n, nodes, panels, scale);
  } else {
    PrecisionScope scope(precision_bits);
    result = integrate_with<HighPrecision>(n, nodes, panels, scale);
  }
  result.precision_bits = precision_bits;
  return result;
}

}  // namespace

std::vector<double> zeros_of_factors(int n, double lo, double hi) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
  if (!(lo < hi) || lo < -kHalfPi || hi > kHalfPi) {
    throw DomainError("interval must satisfy -pi/2 <= lo < hi <= pi/2");
  }
  std::vector<double> out;
  for (const auto& z : zero_fractions(n)) {
    const double t = std::numbers::pi * static_cast<double>(z.p) / static_cast<double>(z.q);
    if (t > lo && t < hi) out.push_back(t);
  }
  return out;
}

QuadratureResult integrate_product(int n, int precision_bits, int nodes_per_panel) {
  return integrate(n, precision_bits, nodes_per_panel, false);
}

QuadratureResult integrate_product_half(int n, int precision_bits, int nodes_per_panel) {
  return integrate(n, precision_bits, nodes_per_panel, true);
}

ExtendedFloat s_via_quadrature(int n, int precision_bits, int nodes_per_panel) {
  require_middle_term(n);
  const QuadratureResult q = integrate_product(n, precision_bits, nodes_per_panel);
  const auto integral = q.value.convert_to<long double>();
  if (!(integral > 0)) throw std::runtime_error("quadrature produced a nonpositive integral");
  const long double relative = static_cast<long double>(q.error_estimate) / integral;
  // value rounding to long double, division by pi, and the pi constant itself
  const double err = compose_relative_errors(static_cast<double>(relative), 3 * 0x1p-64);
  return ExtendedFloat::from(integral / std::numbers::pi_v<long double>, n, err);
}

}  // namespace midcoef

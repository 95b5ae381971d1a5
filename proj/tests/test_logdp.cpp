#include "doctest.h"

#include <cmath>

#include "midcoef/errors.hpp"
#include "midcoef/extended_float.hpp"
#include "midcoef/logdp.hpp"
#include "midcoef/spectrum.hpp"

using namespace midcoef;

TEST_CASE("ExtendedFloat normalization and arithmetic") {
  const auto x = ExtendedFloat::from(12.0L);
  CHECK(x.mantissa() == 1.5L);
  CHECK(x.exponent() == 3);
  CHECK(x.log2() == doctest::Approx(std::log2(12.0)));
  CHECK(ExtendedFloat{}.is_zero());
  CHECK(std::isinf(ExtendedFloat{}.log2()));

  const auto y = ExtendedFloat::from(0.75L, 100, 1e-10);
  CHECK(y.exponent() == 99);
  const auto p = x * y;
  CHECK(p.exponent() == 103);
  CHECK(p.mantissa() == 1.125L);
  CHECK(p.error_bound() >= 1e-10);
  const auto q = p / y;
  CHECK(q.mantissa() == 1.5L);
  CHECK(q.exponent() == 3);
  CHECK(q.error_bound() >= 2e-10);

  CHECK_THROWS_AS(ExtendedFloat::from(-1.0L), DomainError);
  CHECK_THROWS_AS(x / ExtendedFloat{}, DomainError);
  CHECK(ExtendedFloat::from(14.0L).to_string(6) == "1.40000e+1");
  CHECK(ExtendedFloat::from(9.9999999L).to_string(3) == "1.00e+1");
}

TEST_CASE("ExtendedFloat from big integers") {
  const mpz_class small = 14;
  const auto a = ExtendedFloat::from_integer(small);
  CHECK(a.to_long_double() == 14.0L);
  CHECK(a.error_bound() == 0.0);

  const mpz_class power = mpz_class(1) << 5000;
  const auto b = ExtendedFloat::from_integer(power);
  CHECK(b.mantissa() == 1.0L);
  CHECK(b.exponent() == 5000);
  CHECK(b.error_bound() == 0.0);

  const auto c = ExtendedFloat::from_integer(power + 1);
  CHECK(c.error_bound() > 0.0);
  CHECK(c.error_bound() <= 0x1p-63);
  CHECK(log2_ratio(c, b) == 0.0L);
}

TEST_CASE("middle_coefficient_log2 examples") {
  const auto s8 = middle_coefficient_log2(8, 64);
  CHECK(std::abs(s8.to_long_double() - 14.0L) <= 14.0L * s8.error_bound());
  CHECK(static_cast<double>(s8.log2()) == doctest::Approx(3.807355).epsilon(1e-6));
  const auto s3 = middle_coefficient_log2(3, 64);
  CHECK(s3.to_long_double() == 2.0L);
  CHECK_THROWS_AS(middle_coefficient_log2(5, 64), NoMiddleTermError);
  CHECK_THROWS_AS(middle_coefficient_log2(8, 31), DomainError);
  CHECK_THROWS_AS(middle_coefficient_log2(8, 114), DomainError);
}

TEST_CASE("validate_against_exact") {
  for (const auto& row : validate_against_exact(20, 64)) CHECK(row.pass);
  const auto report = validate_against_exact(100, 64);
  CHECK(report.size() == 50);
  for (const auto& row : report) {
    CAPTURE(row.n);
    CHECK(row.pass);
  }
  CHECK_THROWS_AS(validate_against_exact(100, 8), DomainError);
}

TEST_CASE("reduced precisions stay within their bounds") {
  for (int bits : {32, 40, 53, 63, 64, 80, 113}) {
    CAPTURE(bits);
    for (const auto& row : validate_against_exact(120, bits)) {
      CAPTURE(row.n);
      CHECK(row.pass);
    }
  }
}

TEST_CASE("lower precision actually loses accuracy") {
  // With 32 bits the rounding is visible at n = 120; with 113 it is not.
  const mpz_class exact = middle_coefficient(120);
  const auto lo = middle_coefficient_log2(120, 32);
  const auto hi = middle_coefficient_log2(120, 113);
  const auto e = ExtendedFloat::from_integer(exact);
  CHECK(std::abs(log2_ratio(lo, e)) > 1e-12L);
  CHECK(std::abs(log2_ratio(hi, e)) < 1e-17L);
}

TEST_CASE("error bound: monotone in precision, linear in depth") {
  double previous = 1.0;
  for (int bits = 32; bits <= 113; ++bits) {
    const double b = logdp_error_bound(400, bits);
    CHECK(b <= previous);
    previous = b;
  }
  for (int n : {3, 100, 400, 4000}) {
    const double b = logdp_error_bound(n, 64);
    CHECK(b <= 1e-6 * n);
    CHECK(b >= n * 0x1p-63);
    CHECK(b <= 1.01 * n * 0x1p-63);
  }
}

TEST_CASE("row rescaling is exact") {
  // Forcing frequent power-of-two rescales must not change a single bit.
  for (int n : {99, 200, 399}) {
    const auto plain = middle_coefficient_log2(n, 64);
    const auto rescaled = detail::middle_coefficient_log2_rescaled(n, 64, 40, 32);
    CHECK(plain.mantissa() == rescaled.mantissa());
    CHECK(plain.exponent() == rescaled.exponent());
    const auto rescaled128 = detail::middle_coefficient_log2_rescaled(n, 100, 40, 32);
    CHECK(std::abs(log2_ratio(rescaled128, plain)) < 1e-15L);
  }
}

#include "midcoef/spectrum.hpp"

#include <algorithm>
#include <string>

#include "midcoef/errors.hpp"

namespace midcoef {
namespace {

std::size_t limbs_for(int n) { return static_cast<std::size_t>(n) / 64 + 1; }

void check_n(int n, int limit) {
  if (n < 1 || n > limit) {
    throw DomainError("n must lie in [1, " + std::to_string(limit) + "], got " + std::to_string(n));
  }
}

// dst += src over `count` limbs; the caller guarantees the sum fits.
inline void add_limbs(std::uint64_t* dst, const std::uint64_t* src, std::size_t count) {
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t a = dst[i];
    std::uint64_t s = a + src[i];
    const std::uint64_t c1 = s < a;
    s += carry;
    const std::uint64_t c2 = s < carry;
    dst[i] = s;
    carry = c1 | c2;
  }
}

// Multiplies the stored prefix c_0..c_last by (1+x^k) for k = first..last_factor.
// Truncating to the prefix is exact: c_j only ever reads c_{j-k}.
template <class OnStep>
void run_dp(std::vector<std::uint64_t>& limbs, std::size_t stride, std::int64_t last, int n,
            OnStep&& on_step) {
  for (int k = 1; k <= n; ++k) {
    const std::int64_t top = std::min<std::int64_t>(last, spectrum_degree(k));
    // After this factor every coefficient is at most 2^k.
    const std::size_t active = limbs_for(k);
    std::uint64_t* base = limbs.data();
    if (active == 1) {
      for (std::int64_t j = top; j >= k; --j) base[j * stride] += base[(j - k) * stride];
    } else {
      for (std::int64_t j = top; j >= k; --j) {
        add_limbs(base + j * stride, base + (j - k) * stride, active);
      }
    }
    on_step(k);
  }
}

mpz_class from_limbs(std::span<const std::uint64_t> limbs) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  return z;
}

int compare_limbs(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

mpz_class CoefficientSpectrum::operator[](std::int64_t j) const { return from_limbs(limbs(j)); }

mpz_class CoefficientSpectrum::at(std::int64_t j) const {
  if (j < 0 || j > degree()) {
    throw DomainError("coefficient index " + std::to_string(j) + " outside [0, " +
                      std::to_string(degree()) + "]");
  }
  return (*this)[j];
}

std::span<const std::uint64_t> CoefficientSpectrum::limbs(std::int64_t j) const {
  return {limbs_.data() + static_cast<std::size_t>(fold(j)) * stride_, stride_};
}

int CoefficientSpectrum::compare(std::int64_t i, std::int64_t j) const {
  return compare_limbs(limbs(i), limbs(j));
}

std::vector<mpz_class> CoefficientSpectrum::to_vector() const {
  std::vector<mpz_class> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::int64_t j = 0; j <= degree(); ++j) out.push_back((*this)[j]);
  return out;
}

std::size_t estimated_memory_bytes(int n) {
  const auto entries = static_cast<std::size_t>(spectrum_degree(n) / 2 + 1);
  return entries * limbs_for(n) * sizeof(std::uint64_t);
}

CoefficientSpectrum expand(int n, int limit) {
  check_n(n, limit);
  const std::int64_t half = spectrum_degree(n) / 2;
  const std::size_t stride = limbs_for(n);
  std::vector<std::uint64_t> limbs(static_cast<std::size_t>(half + 1) * stride, 0);
  limbs[0] = 1;
  run_dp(limbs, stride, half, n, [](int) {});
  return CoefficientSpectrum(n, stride, std::move(limbs));
}

mpz_class middle_coefficient(int n, int limit) {
  require_middle_term(n);
  check_n(n, limit);
  const auto spectrum = expand(n, limit);
  return spectrum[spectrum.degree() / 2];
}

MaxCoefficient max_coefficient(const CoefficientSpectrum& spectrum) {
  std::int64_t best = 0;
  const std::int64_t half = spectrum.degree() / 2;
  for (std::int64_t j = 1; j <= half; ++j) {
    if (spectrum.compare(j, best) > 0) best = j;
  }
  return {best, spectrum[best]};
}

MaxCoefficient max_coefficient(int n, int limit) { return max_coefficient(expand(n, limit)); }

mpz_class coefficient_at(int n, std::int64_t j, int limit) { return expand(n, limit).at(j); }

std::vector<MiddleValue> middle_coefficient_sequence(int n_max, int limit) {
  check_n(n_max, limit);
  const std::int64_t half = spectrum_degree(n_max) / 2;
  const std::size_t stride = limbs_for(n_max);
  std::vector<std::uint64_t> limbs(static_cast<std::size_t>(half + 1) * stride, 0);
  limbs[0] = 1;
  std::vector<MiddleValue> out;
  run_dp(limbs, stride, half, n_max, [&](int k) {
    if (!has_middle_term(k)) return;
    const auto middle = static_cast<std::size_t>(spectrum_degree(k) / 2);
    out.push_back({k, from_limbs({limbs.data() + middle * stride, stride})});
  });
  return out;
}

}  // namespace midcoef

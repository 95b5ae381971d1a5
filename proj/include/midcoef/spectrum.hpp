#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace midcoef {

inline constexpr int kDefaultExactLimit = 5000;

// Degree n(n+1)/2 of (1+x)(1+x^2)...(1+x^n).
constexpr std::int64_t spectrum_degree(std::int64_t n) { return n * (n + 1) / 2; }

// Coefficients c_0..c_N of (1+x)(1+x^2)...(1+x^n), i.e. the subset-sum
// histogram of {1..n}. Only c_0..c_{N/2} are held; the upper half is read
// through the symmetry c_j = c_{N-j}. Each stored entry is a fixed-width
// little-endian run of 64-bit limbs wide enough for 2^n.
class CoefficientSpectrum {
 public:
  int n() const noexcept { return n_; }
  std::int64_t degree() const noexcept { return spectrum_degree(n_); }
  std::int64_t size() const noexcept { return degree() + 1; }
  std::int64_t stored_entries() const noexcept { return static_cast<std::int64_t>(limbs_.size() / stride_); }
  std::size_t memory_bytes() const noexcept { return limbs_.size() * sizeof(std::uint64_t); }

  // Unchecked logical access; j must lie in [0, N].
  mpz_class operator[](std::int64_t j) const;
  // Checked access; throws DomainError when j is outside [0, N].
  mpz_class at(std::int64_t j) const;

  // Raw limbs of c_j (least significant first), j in [0, N].
  std::span<const std::uint64_t> limbs(std::int64_t j) const;

  // Three-way comparison of c_i and c_j without allocating.
  int compare(std::int64_t i, std::int64_t j) const;

  std::vector<mpz_class> to_vector() const;

 private:
  friend CoefficientSpectrum expand(int n, int limit);

  CoefficientSpectrum(int n, std::size_t stride, std::vector<std::uint64_t> limbs)
      : n_(n), stride_(stride), limbs_(std::move(limbs)) {}

  std::int64_t fold(std::int64_t j) const noexcept { return j <= degree() / 2 ? j : degree() - j; }

  int n_;
  std::size_t stride_;
  std::vector<std::uint64_t> limbs_;
};

// Exact spectrum for 1 <= n <= limit.
CoefficientSpectrum expand(int n, int limit = kDefaultExactLimit);

// S(n) = c_{n(n+1)/4}; throws NoMiddleTermError unless n = 0 or 3 (mod 4).
mpz_class middle_coefficient(int n, int limit = kDefaultExactLimit);

struct MaxCoefficient {
  std::int64_t index;  // smallest index attaining the maximum
  mpz_class value;
};

MaxCoefficient max_coefficient(int n, int limit = kDefaultExactLimit);
MaxCoefficient max_coefficient(const CoefficientSpectrum& spectrum);

mpz_class coefficient_at(int n, std::int64_t j, int limit = kDefaultExactLimit);

struct MiddleValue {
  int n;
  mpz_class value;
};

// S(n) for every n <= n_max with a middle term, from a single DP pass.
std::vector<MiddleValue> middle_coefficient_sequence(int n_max, int limit = kDefaultExactLimit);

// Bytes held by expand(n): (floor(N/2)+1) entries of ceil((n+1)/64) limbs.
std::size_t estimated_memory_bytes(int n);

}  // namespace midcoef

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace midcoef {

struct BFileEntry {
  std::int64_t index;
  mpz_class value;

  friend bool operator==(const BFileEntry& a, const BFileEntry& b) {
    return a.index == b.index && a.value == b.value;
  }
};

// "<index> <value>" per line, '#' comment lines and blank lines skipped.
// Throws ParseError (with line number) on a malformed line and FormatError
// when indices are not strictly increasing.
std::vector<BFileEntry> parse_bfile(std::string_view text);

// One "<index> <value>\n" per entry. Throws DomainError unless indices are
// strictly increasing and values nonnegative.
std::string write_bfile(const std::vector<BFileEntry>& entries);

struct CrosscheckItem {
  std::int64_t index;
  mpz_class computed;
  mpz_class reference;
  bool equal;
};

struct CrosscheckReport {
  std::vector<CrosscheckItem> items;  // indices present in both lists, ascending
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t computed_only = 0;
  std::size_t reference_only = 0;

  bool ok() const { return mismatches == 0; }
};

CrosscheckReport crosscheck(const std::vector<BFileEntry>& computed, const std::vector<BFileEntry>& reference);

// Bundled A025591 snapshot (maximum coefficient of (1+x)...(1+x^n), n = 0..120).
std::string_view bundled_a025591();

// Middle coefficients S(n) for n <= n_max with n = 0, 3 (mod 4).
std::vector<BFileEntry> computed_middle_coefficients(int n_max);
// Maximum coefficients for 1 <= n <= n_max.
std::vector<BFileEntry> computed_max_coefficients(int n_max);

// HTTP(S) GET of a b-file; throws std::runtime_error on failure or timeout.
std::string fetch_bfile(const std::string& url, double timeout_seconds);

// Cached S(n) values. Plain text, one tab-separated record per line:
//   n  source  precision_bits  kind  value  error_bound
// kind "int" holds the decimal integer; kind "log2" holds log2 of the value
// (used for exact values longer than kCacheInlineDigits digits and for every
// floating-point source). Lines starting with '#' are comments.
struct CacheRecord {
  int n = 0;
  std::string source;  // exact, logdp, quadrature
  int precision_bits = 0;
  std::string kind;    // int or log2
  std::string value;
  double error_bound = 0;

  friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

inline constexpr std::size_t kCacheInlineDigits = 2000;
inline constexpr const char* kCacheDirVariable = "MIDCOEF_CACHE_DIR";

std::string format_cache_record(const CacheRecord& record);
CacheRecord parse_cache_record(std::string_view line, std::size_t line_number = 1);

// Exact S(n) as a record, switching to log2 above kCacheInlineDigits digits.
CacheRecord exact_cache_record(int n, const mpz_class& value);

// $MIDCOEF_CACHE_DIR, else $XDG_CACHE_HOME/midcoef, else ~/.cache/midcoef.
std::filesystem::path default_cache_dir();

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file() const { return dir_ / "s_values.tsv"; }

  std::vector<CacheRecord> records() const;
  std::optional<CacheRecord> lookup(int n, const std::string& source) const;
  // Replaces any record with the same (n, source); rewrites the file
  // atomically through a temporary and a rename.
  void store(const CacheRecord& record);
  void clear();

 private:
  std::filesystem::path dir_;
};

}  // namespace midcoef

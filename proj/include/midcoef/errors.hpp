#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace midcoef {

// Precondition violated by an argument (out-of-range n, bad precision, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// n(n+1)/4 is not an integer, so the expansion has no middle term.
class NoMiddleTermError : public DomainError {
 public:
  explicit NoMiddleTermError(long long n)
      : DomainError("no middle term: n = " + std::to_string(n) +
                    " is not congruent to 0 or 3 mod 4"),
        n_(n) {}
  long long n() const noexcept { return n_; }

 private:
  long long n_;
};

// Malformed line in a b-file or cache file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed lines that violate a file-level invariant (ordering).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool has_middle_term(long long n) { return n >= 1 && (n % 4 == 0 || n % 4 == 3); }

inline void require_middle_term(long long n) {
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
  if (!has_middle_term(n)) throw NoMiddleTermError(n);
}

}  // namespace midcoef

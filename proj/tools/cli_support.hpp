#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace midcoef::cli {

enum class OutputFormat { Text, Csv, Jsonl };

OutputFormat parse_output_format(const std::string& text);

// "a..b" keeps only n = 0, 3 (mod 4) in [a, b]; "a,b,c" and a single
// integer are strict and every member must have a middle term.
std::vector<int> parse_n_spec(const std::string& text);

// Comma list of positive integers with no congruence filter.
std::vector<int> parse_int_list(const std::string& text);

// Digit strings for integers too wide for int64.
struct BigInt {
  std::string digits;
};

using Field = std::variant<std::int64_t, double, std::string, bool, BigInt>;

struct Record {
  std::vector<std::pair<std::string, Field>> fields;

  Record& add(std::string key, Field value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

// Shortest text that reads back to the same double; "nan", "inf", "-inf".
std::string format_double(double x);

// CSV: one header row from the first record, then one row per record.
// All records must share the same keys.
void write_csv(std::ostream& out, const std::vector<Record>& records);
// JSONL: one object per record. BigInt becomes a JSON string, non-finite
// doubles become null.
void write_jsonl(std::ostream& out, const std::vector<Record>& records);
void write_records(std::ostream& out, OutputFormat format, const std::vector<Record>& records);

}  // namespace midcoef::cli

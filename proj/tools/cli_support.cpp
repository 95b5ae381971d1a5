#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "midcoef/errors.hpp"

namespace midcoef::cli {

namespace {

int parse_int(const std::string& s) {
  int value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) throw DomainError("not an integer: '" + s + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string csv_cell(const Field& f) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const BigInt& v) const { return v.digits; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
      std::string q = "\"";
      for (char c : v) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + '"';
    }
  };
  return std::visit(Visitor{}, f);
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "jsonl") return OutputFormat::Jsonl;
  throw DomainError("unknown format '" + text + "' (expected text, csv or jsonl)");
}

std::vector<int> parse_n_spec(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = parse_int(text.substr(0, dots));
    const int b = parse_int(text.substr(dots + 2));
    if (a < 1 || b < a) throw DomainError("bad range '" + text + "'");
    for (int n = a; n <= b; ++n) {
      if (has_middle_term(n)) out.push_back(n);
    }
    if (out.empty()) throw DomainError("range '" + text + "' contains no n = 0, 3 (mod 4)");
    return out;
  }
  for (const auto& part : split(text, ',')) {
    const int n = parse_int(part);
    require_middle_term(n);
    out.push_back(n);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const int n = parse_int(part);
    if (n < 1) throw DomainError("expected a positive integer, got " + part);
    out.push_back(n);
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<Record>& records) {
  if (records.empty()) return;
  const auto& first = records.front().fields;
  for (std::size_t i = 0; i < first.size(); ++i) out << (i ? "," : "") << first[i].first;
  out << '\n';
  for (const auto& r : records) {
    if (r.fields.size() != first.size()) throw std::logic_error("CSV records must share one header");
    for (std::size_t i = 0; i < r.fields.size(); ++i) out << (i ? "," : "") << csv_cell(r.fields[i].second);
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<Record>& records) {
  for (const auto& r : records) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [key, field] : r.fields) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BigInt>) {
              obj[key] = v.digits;
            } else if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) {
                obj[key] = v;
              } else {
                obj[key] = nullptr;
              }
            } else {
              obj[key] = v;
            }
          },
          field);
    }
    out << obj.dump() << '\n';
  }
}

void write_records(std::ostream& out, OutputFormat format, const std::vector<Record>& records) {
  switch (format) {
    case OutputFormat::Csv:
      write_csv(out, records);
      break;
    case OutputFormat::Jsonl:
      write_jsonl(out, records);
      break;
    case OutputFormat::Text:
      for (const auto& r : records) {
        for (std::size_t i = 0; i < r.fields.size(); ++i) {
          out << (i ? "  " : "") << r.fields[i].first << '=' << csv_cell(r.fields[i].second);
        }
        out << '\n';
      }
      break;
  }
}

}  // namespace midcoef::cli

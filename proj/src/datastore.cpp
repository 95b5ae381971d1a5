#include "midcoef/datastore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "midcoef/errors.hpp"
#include "midcoef/spectrum.hpp"

namespace midcoef {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::int64_t parse_index(std::string_view s, std::size_t line) {
  const bool negative = !s.empty() && s.front() == '-';
  const std::string_view digits = negative ? s.substr(1) : s;
  if (!all_digits(digits) || digits.size() > 18) throw ParseError(line, "bad index '" + std::string(s) + "'");
  const std::int64_t v = std::stoll(std::string(digits));
  return negative ? -v : v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<BFileEntry> parse_bfile(std::string_view text) {
  std::vector<BFileEntry> out;
  std::size_t number = 0;
  for (std::string_view line : split_lines(text)) {
    ++number;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos) throw ParseError(number, "expected '<index> <value>'");
    const std::string_view index_text = line.substr(0, space);
    const std::string_view value_text = line.substr(space + 1);
    if (!all_digits(value_text)) throw ParseError(number, "bad value '" + std::string(value_text) + "'");
    BFileEntry entry{parse_index(index_text, number), mpz_class(std::string(value_text), 10)};
    if (!out.empty() && entry.index <= out.back().index) {
      throw FormatError("line " + std::to_string(number) + ": index " + std::to_string(entry.index) +
                        " does not increase (previous " + std::to_string(out.back().index) + ")");
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::string write_bfile(const std::vector<BFileEntry>& entries) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].index <= entries[i - 1].index) {
      throw DomainError("b-file entries must have strictly increasing indices");
    }
    if (sgn(entries[i].value) < 0) throw DomainError("b-file values must be nonnegative");
    out += std::to_string(entries[i].index);
    out += ' ';
    out += entries[i].value.get_str();
    out += '\n';
  }
  return out;
}

CrosscheckReport crosscheck(const std::vector<BFileEntry>& computed, const std::vector<BFileEntry>& reference) {
  std::map<std::int64_t, const mpz_class*> ref;
  for (const auto& e : reference) ref[e.index] = &e.value;
  CrosscheckReport report;
  std::map<std::int64_t, CrosscheckItem> items;
  for (const auto& e : computed) {
    const auto it = ref.find(e.index);
    if (it == ref.end()) {
      ++report.computed_only;
      continue;
    }
    const bool equal = e.value == *it->second;
    items[e.index] = CrosscheckItem{e.index, e.value, *it->second, equal};
  }
  report.reference_only = ref.size() - items.size();
  for (auto& [index, item] : items) {
    (item.equal ? report.matches : report.mismatches) += 1;
    report.items.push_back(std::move(item));
  }
  return report;
}

std::vector<BFileEntry> computed_middle_coefficients(int n_max) {
  std::vector<BFileEntry> out;
  if (n_max < 3) return out;
  for (auto& [n, value] : middle_coefficient_sequence(n_max)) out.push_back({n, std::move(value)});
  return out;
}

std::vector<BFileEntry> computed_max_coefficients(int n_max) {
  std::vector<BFileEntry> out;
  for (int n = 1; n <= n_max; ++n) out.push_back({n, max_coefficient(n).value});
  return out;
}

std::string format_cache_record(const CacheRecord& r) {
  char bound[32];
  std::snprintf(bound, sizeof bound, "%.17g", r.error_bound);
  std::ostringstream os;
  os << r.n << '\t' << r.source << '\t' << r.precision_bits << '\t' << r.kind << '\t' << r.value << '\t'
     << bound;
  return os.str();
}

CacheRecord parse_cache_record(std::string_view line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (fields.size() != 6) throw ParseError(line_number, "cache record needs 6 tab-separated fields");
  CacheRecord r;
  try {
    std::size_t used = 0;
    r.n = std::stoi(fields[0], &used);
    if (used != fields[0].size()) throw std::invalid_argument("n");
    r.precision_bits = std::stoi(fields[2], &used);
    if (used != fields[2].size()) throw std::invalid_argument("precision");
    r.error_bound = std::stod(fields[5], &used);
    if (used != fields[5].size()) throw std::invalid_argument("error_bound");
  } catch (const std::logic_error&) {
    throw ParseError(line_number, "bad numeric field in cache record");
  }
  r.source = fields[1];
  r.kind = fields[3];
  r.value = fields[4];
  if (r.kind != "int" && r.kind != "log2") throw ParseError(line_number, "unknown value kind '" + r.kind + "'");
  if (r.kind == "int" && !all_digits(r.value)) throw ParseError(line_number, "bad integer value");
  return r;
}

CacheRecord exact_cache_record(int n, const mpz_class& value) {
  CacheRecord r;
  r.n = n;
  r.source = "exact";
  std::string digits = value.get_str();
  if (digits.size() <= kCacheInlineDigits) {
    r.kind = "int";
    r.value = std::move(digits);
    return r;
  }
  // log2 from the top 64 bits; relative error below 2^-62.
  const std::size_t bits = mpz_sizeinbase(value.get_mpz_t(), 2);
  const mpz_class top = value >> (bits - 64);
  const long double l2 = static_cast<long double>(bits - 64) + std::log2(static_cast<long double>(top.get_d()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", l2);
  r.kind = "log2";
  r.value = buf;
  r.error_bound = 0x1p-52;
  return r;
}

std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv(kCacheDirVariable); dir != nullptr && *dir != '\0') return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "midcoef";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "midcoef";
  }
  return std::filesystem::temp_directory_path() / "midcoef";
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::vector<CacheRecord> Cache::records() const {
  std::vector<CacheRecord> out;
  std::ifstream in(file());
  if (!in) return out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line.front() == '#') continue;
    out.push_back(parse_cache_record(line, number));
  }
  return out;
}

std::optional<CacheRecord> Cache::lookup(int n, const std::string& source) const {
  for (auto& r : records()) {
    if (r.n == n && r.source == source) return r;
  }
  return std::nullopt;
}

void Cache::store(const CacheRecord& record) {
  std::vector<CacheRecord> all = records();
  std::erase_if(all, [&](const CacheRecord& r) { return r.n == record.n && r.source == record.source; });
  all.push_back(record);
  std::sort(all.begin(), all.end(), [](const CacheRecord& a, const CacheRecord& b) {
    return a.n != b.n ? a.n < b.n : a.source < b.source;
  });
  std::filesystem::create_directories(dir_);
  const auto tmp = file().string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << "# n\tsource\tprecision_bits\tkind\tvalue\terror_bound\n";
    for (const auto& r : all) out << format_cache_record(r) << '\n';
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, file());
}

void Cache::clear() { std::filesystem::remove(file()); }

}  // namespace midcoef

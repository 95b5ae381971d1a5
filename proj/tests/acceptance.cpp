// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "midcoef/asymptotics.hpp"
#include "midcoef/cosprod.hpp"
#include "midcoef/datastore.hpp"
#include "midcoef/errors.hpp"
#include "midcoef/logdp.hpp"
#include "midcoef/quadrature.hpp"
#include "midcoef/spectrum.hpp"
#include "oracles.hpp"

using namespace midcoef;

namespace {

#ifndef MIDCOEF_CLI_PATH
#error "MIDCOEF_CLI_PATH must name the midcoef executable"
#endif

// Pinned tolerances and limits.
constexpr double kAc1Seconds = 1.0;
constexpr double kAc3Seconds = 60.0;
constexpr double kAc4RelError = 1e-8;
constexpr double kAc4Seconds = 60.0;
constexpr double kAc5Lower = 0.9;
constexpr double kAc5Upper = 1.02;
constexpr double kAc5DecayFactor = 0.3;
constexpr double kAc5Seconds = 600.0;
constexpr double kAc7IdentityPerN = 1e-11;
constexpr double kAc8Floor = 1.0 - 1e-6;
constexpr double kAc8GaussTol = 1e-15;
constexpr double kAc9BoundPerN = 1e-6;
constexpr int kAc10Files = 100;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "\n    failed: " << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void run(const std::string& id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  if (!out.pass) ++failures;
  std::printf("[%s] %s %s (%.2f s)%s\n", out.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(), dt,
              out.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<int> middle_ns(int lo, int hi) {
  std::vector<int> ns;
  for (int n = lo; n <= hi; ++n) {
    if (has_middle_term(n)) ns.push_back(n);
  }
  return ns;
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MIDCOEF_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// True when a CSV cell and a JSON value denote the same value.
bool same_value(const std::string& cell, const nlohmann::json& v) {
  if (v.is_string()) return cell == v.get<std::string>();
  if (v.is_boolean()) return cell == (v.get<bool>() ? "true" : "false");
  if (v.is_number_integer()) return cell == std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return std::strtod(cell.c_str(), nullptr) == v.get<double>();
  if (v.is_null()) return cell == "nan" || cell == "inf" || cell == "-inf";
  return false;
}

void ac1(Outcome& o) {
  const auto t0 = Clock::now();
  const auto snapshot = parse_bfile(bundled_a025591());
  int checked = 0;
  for (int n : middle_ns(1, 60)) {
    const mpz_class s = middle_coefficient(n);
    const auto it = std::find_if(snapshot.begin(), snapshot.end(), [&](const BFileEntry& e) { return e.index == n; });
    o.require(it != snapshot.end(), "snapshot lacks n = " + std::to_string(n));
    if (it == snapshot.end()) continue;
    o.require(s == it->value, "S(" + std::to_string(n) + ") differs from the snapshot");
    o.require(s == max_coefficient(n).value, "S(" + std::to_string(n) + ") differs from the maximum coefficient");
    ++checked;
  }
  const double dt = seconds_since(t0);
  o.require(checked == 30, "expected 30 values of n");
  o.require(dt < kAc1Seconds, "runtime " + std::to_string(dt) + " s");
  o.detail << " [" << checked << " values]";
}

void ac2(Outcome& o) {
  for (int n = 1; n <= 20; ++n) {
    const auto hist = oracle::subset_sum_histogram(n);
    const auto got = expand(n).to_vector();
    bool equal = got.size() == hist.size();
    for (std::size_t j = 0; equal && j < hist.size(); ++j) {
      equal = got[j] == mpz_class(static_cast<unsigned long>(hist[j]));
    }
    o.require(equal, "expand(" + std::to_string(n) + ") differs from enumeration");
  }
}

void ac3(Outcome& o) {
  const auto t0 = Clock::now();
  for (int n = 1; n <= 300; ++n) {
    const auto c = expand(n).to_vector();
    const std::string tag = "n = " + std::to_string(n) + ": ";
    o.require(static_cast<std::int64_t>(c.size()) == spectrum_degree(n) + 1, tag + "length");
    mpz_class sum = 0;
    bool symmetric = true;
    bool positive = true;
    for (std::size_t j = 0; j < c.size(); ++j) {
      sum += c[j];
      symmetric = symmetric && c[j] == c[c.size() - 1 - j];
      positive = positive && sgn(c[j]) > 0;
    }
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    o.require(sum == two_n, tag + "sum is not 2^n");
    o.require(symmetric, tag + "not symmetric");
    o.require(positive, tag + "nonpositive coefficient");
    o.require(c.front() == 1 && c.back() == 1, tag + "endpoint coefficients");
  }
  const double dt = seconds_since(t0);
  o.require(dt < kAc3Seconds, "runtime " + std::to_string(dt) + " s");
}

void ac4(Outcome& o) {
  const auto t0 = Clock::now();
  double worst = 0;
  for (int n : middle_ns(1, 40)) {
    const mpz_class exact = middle_coefficient(n);
    const ExtendedFloat s = s_via_quadrature(n);
    const oracle::Mp approx =
        oracle::Mp(s.mantissa()) * boost::multiprecision::pow(oracle::Mp(2), static_cast<int>(s.exponent()));
    const oracle::Mp exact_mp(exact.get_str());
    const double rel = static_cast<double>(abs(approx / exact_mp - 1));
    worst = std::max(worst, rel);
    o.require(rel <= kAc4RelError, "n = " + std::to_string(n) + " relative error " + std::to_string(rel));

    const QuadratureResult q = integrate_product(n);
    const oracle::Mp truth = oracle::integral_from_exact(exact, n);
    const double abs_err = static_cast<double>(abs(oracle::Mp(q.value) - truth));
    o.require(abs_err <= q.error_estimate, "n = " + std::to_string(n) + " error estimate too small");
  }
  const double dt = seconds_since(t0);
  o.require(dt < kAc4Seconds, "runtime " + std::to_string(dt) + " s");
  o.detail << " [max relative error " << worst << "]";
}

struct RatioRow {
  int n;
  RatioRecord rec;
};

std::vector<RatioRow> ratio_rows() {
  static std::vector<RatioRow> rows;
  if (!rows.empty()) return rows;
  for (int n : {99, 199, 399, 799, 1599, 3199}) {
    const ValueSource source = n <= 799 ? ValueSource::Exact : ValueSource::LogDp;
    rows.push_back({n, ratio_table({n}, source).front()});
  }
  return rows;
}

void ac5(Outcome& o) {
  const auto t0 = Clock::now();
  const auto rows = ratio_rows();
  double previous = INFINITY;
  double at399 = 0;
  double at3199 = 0;
  for (const auto& [n, r] : rows) {
    const double dev = std::abs(r.ratio_conjecture - 1);
    o.detail << " n=" << n << ":" << r.ratio_conjecture;
    o.require(dev < previous, "deviation not decreasing at n = " + std::to_string(n));
    o.require(r.ratio_conjecture >= kAc5Lower && r.ratio_conjecture <= kAc5Upper,
              "ratio outside [0.9, 1.02] at n = " + std::to_string(n));
    previous = dev;
    if (n == 399) at399 = dev;
    if (n == 3199) at3199 = dev;
  }
  o.require(at3199 <= kAc5DecayFactor * at399, "deviation at 3199 exceeds 0.3 times deviation at 399");
  const double dt = seconds_since(t0);
  o.require(dt < kAc5Seconds, "runtime " + std::to_string(dt) + " s");
}

void ac6(Outcome& o) {
  for (const auto& [n, r] : ratio_rows()) {
    o.require(std::abs(r.ratio_refined - 1) < std::abs(r.ratio_conjecture - 1),
              "refined estimate not closer at n = " + std::to_string(n));
    o.detail << " n=" << n << ":" << r.ratio_refined;
  }
}

void ac7(Outcome& o) {
  BoundSuiteConfig config;
  config.ns = {16, 32, 64, 128, 256};
  config.grid = 2048;
  config.seed = 7;
  config.monotonicity_samples = 1000;
  const BoundSuiteReport report = verify_lemma_bounds(config);
  for (const char* name : {"cos_square_identity", "amgm_bound", "sin_bound", "jordan_inequality", "case1_taylor_bound",
                           "case3_exponential_bound", "monotonicity_in_n"}) {
    const BoundCheck* c = report.find(name);
    o.require(c != nullptr, std::string("missing check ") + name);
    if (c == nullptr) continue;
    o.require(c->pass(), std::string(name) + ": " + std::to_string(c->violations) + " violations in " +
                             std::to_string(c->samples) + " samples");
  }
  const BoundCheck* mono = report.find("monotonicity_in_n");
  o.require(mono != nullptr && mono->samples >= 1000, "monotonicity needs 1000 samples");
  o.require(report.max_identity_error_over_n <= kAc7IdentityPerN, "identity error exceeds 1e-11 n");
  o.detail << " [identity error / n " << report.max_identity_error_over_n << "]";
}

void ac8(Outcome& o) {
  const std::array<double, 4> cs{1e2, 1e4, 1e6, 1e8};
  double previous_ratio = -INFINITY;
  long double previous_tail = INFINITY;
  for (double c : cs) {
    const double b = std::pow(c, -0.25);
    const double ratio = truncated_gaussian_ratio(c, -b, b);
    const long double tail = truncated_gaussian_tail(c, -b, b);
    o.require(ratio >= previous_ratio, "ratio decreases at c = " + std::to_string(c));
    o.require(tail < previous_tail, "missing mass does not shrink at c = " + std::to_string(c));
    o.detail << " c=" << c << ":1-" << tail;
    previous_ratio = ratio;
    previous_tail = tail;
  }
  const double b8 = std::pow(1e8, -0.25);
  o.require(truncated_gaussian_ratio(1e8, -b8, b8) >= kAc8Floor, "ratio below 1 - 1e-6 at c = 1e8");
  o.require(std::abs(gaussian_integral(M_PI) - 1) <= kAc8GaussTol, "gaussian_integral(pi) != 1");
}

void ac9(Outcome& o) {
  const auto checks = validate_against_exact(400, 64);
  o.require(checks.size() == middle_ns(1, 400).size(), "not every n <= 400 was checked");
  double worst_ratio = 0;
  for (const auto& c : checks) {
    const double allowed = std::log1p(c.error_bound) / std::log(2.0);
    o.require(std::abs(c.log2_discrepancy) <= allowed, "n = " + std::to_string(c.n) + " outside its bound");
    o.require(c.error_bound <= kAc9BoundPerN * c.n, "n = " + std::to_string(c.n) + " bound exceeds 1e-6 n");
    worst_ratio = std::max(worst_ratio, std::abs(c.log2_discrepancy) / allowed);
  }
  o.detail << " [worst |discrepancy| / allowance " << worst_ratio << "]";
}

void ac10(Outcome& o) {
  // b-file round trips.
  std::mt19937_64 rng(20261017);
  gmp_randclass gmp_rng(gmp_randinit_default);
  gmp_rng.seed(12345);
  for (int f = 0; f < kAc10Files; ++f) {
    std::vector<BFileEntry> entries;
    std::int64_t index = static_cast<std::int64_t>(rng() % 5);
    const int count = static_cast<int>(rng() % 200);
    for (int i = 0; i < count; ++i) {
      index += 1 + static_cast<std::int64_t>(rng() % 3);
      entries.push_back({index, gmp_rng.get_z_bits(static_cast<unsigned long>(rng() % 700))});
    }
    const std::string text = write_bfile(entries);
    const auto parsed = parse_bfile(text);
    o.require(parsed == entries, "parse(write(x)) != x for file " + std::to_string(f));
    o.require(write_bfile(parsed) == text, "write(parse(t)) != t for file " + std::to_string(f));
  }

  // Exit-code contract.
  struct Expect {
    const char* args;
    int status;
  };
  const auto bad = std::filesystem::temp_directory_path() / ("midcoef_ac10_" + std::to_string(::getpid()) + ".txt");
  {
    std::ofstream(bad) << "3 2\n4 2\n7 9\n";
  }
  const std::string bad_arg = "crosscheck --n-max 10 --bfile \"" + bad.string() + "\"";
  const std::vector<Expect> expects{
      {"coeff 8", 0},
      {"coeff 5", 2},
      {"coeff 0", 2},
      {"ratio-table 6", 2},
      {"ratio-table 3,6", 2},
      {"verify-bounds --eps 0.3", 2},
      {"verify-bounds --n 16,64 --grid 2048 --seed 7", 0},
      {"crosscheck --n-max 60", 0},
      {bad_arg.c_str(), 1},
      {"--format xml coeff 8", 2},
      {"no-such-command", 2},
      {"--help", 0},
  };
  for (const auto& e : expects) {
    const Run r = run_cli(e.args);
    o.require(r.status == e.status, std::string("`") + e.args + "` exited " + std::to_string(r.status) + ", expected " +
                                        std::to_string(e.status));
  }
  std::filesystem::remove(bad);
  o.require(run_cli("coeff 8").out == "14\n", "`coeff 8` did not print 14");

  // CSV and JSONL carry the same values.
  for (const std::string args : {"ratio-table 3..40", "--mode logdp ratio-table 99,100", "estimate 3..20",
                                 "verify-bounds --n 16,32", "quadrature 11", "crosscheck --n-max 30"}) {
    const auto csv = lines_of(run_cli("--format csv " + args).out);
    const auto jsonl = lines_of(run_cli("--format jsonl " + args).out);
    o.require(!jsonl.empty() && csv.size() == jsonl.size() + 1, "`" + args + "` row counts differ");
    if (csv.empty() || csv.size() != jsonl.size() + 1) continue;
    const auto header = split_csv_line(csv[0]);
    for (std::size_t i = 0; i < jsonl.size(); ++i) {
      const auto cells = split_csv_line(csv[i + 1]);
      const auto obj = nlohmann::ordered_json::parse(jsonl[i]);
      bool same = cells.size() == header.size() && obj.size() == header.size();
      for (std::size_t k = 0; same && k < header.size(); ++k) {
        same = obj.contains(header[k]) && same_value(cells[k], obj[header[k]]);
      }
      o.require(same, "`" + args + "` row " + std::to_string(i) + " differs between CSV and JSONL");
    }
  }

  // --seed reproducibility.
  const std::string a = run_cli("--format jsonl --seed 11 verify-bounds").out;
  const std::string b = run_cli("--format jsonl --seed 11 verify-bounds").out;
  const std::string c = run_cli("--format jsonl --seed 12 verify-bounds").out;
  o.require(!a.empty() && a == b, "same seed gave different reports");
  o.require(a != c, "different seeds gave identical reports");
}

}  // namespace

int main() {
  run("AC1", "OEIS agreement n <= 60", ac1);
  run("AC2", "enumeration equivalence n <= 20", ac2);
  run("AC3", "spectrum invariants n <= 300", ac3);
  run("AC4", "quadrature against exact n <= 40", ac4);
  run("AC5", "asymptotic convergence", ac5);
  run("AC6", "refined estimate ordering", ac6);
  run("AC7", "product bound suite", ac7);
  run("AC8", "truncated Gaussian ratio", ac8);
  run("AC9", "logdp soundness n <= 400", ac9);
  run("AC10", "interface stability", ac10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

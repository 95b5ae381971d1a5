// midcoef: command-line front end.
//
// Exit codes: 0 success, 1 failure (mismatch, failed check, I/O), 2 usage
// or domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "midcoef/asymptotics.hpp"
#include "midcoef/cosprod.hpp"
#include "midcoef/datastore.hpp"
#include "midcoef/errors.hpp"
#include "midcoef/logdp.hpp"
#include "midcoef/quadrature.hpp"
#include "midcoef/spectrum.hpp"

using namespace midcoef;
using namespace midcoef::cli;

namespace {

struct Globals {
  int precision = 64;
  std::string mode = "exact";
  std::string format = "text";
  std::uint64_t seed = 7;
  double timeout = 10.0;

  OutputFormat output() const { return parse_output_format(format); }
};

std::string fixed_digits(long double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

Record value_record(const CacheRecord& c) {
  Record r;
  r.add("schema", std::string("coeff")).add("n", std::int64_t{c.n}).add("mode", c.source);
  r.add("precision_bits", std::int64_t{c.precision_bits}).add("kind", c.kind);
  if (c.kind == "int") {
    r.add("value", BigInt{c.value});
  } else {
    r.add("value", std::stod(c.value));
  }
  r.add("error_bound", c.error_bound);
  return r;
}

CacheRecord compute_value(int n, ValueSource source, int precision) {
  require_middle_term(n);
  if (source == ValueSource::Exact) return exact_cache_record(n, middle_coefficient(n));
  const ExtendedFloat s = middle_coefficient_log2(n, precision);
  CacheRecord c;
  c.n = n;
  c.source = "logdp";
  c.precision_bits = precision;
  c.kind = "log2";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", s.log2());
  c.value = buf;
  c.error_bound = s.error_bound();
  return c;
}

void print_value(const Globals& g, const CacheRecord& c) {
  const OutputFormat f = g.output();
  if (f != OutputFormat::Text) {
    write_records(std::cout, f, {value_record(c)});
    return;
  }
  if (c.kind == "int") {
    std::cout << c.value << '\n';
  } else {
    std::cout << "log2 " << fixed_digits(std::stold(c.value), 12) << " error_bound " << format_double(c.error_bound)
              << '\n';
  }
}

int cmd_coeff(const Globals& g, int n, bool use_cache) {
  const ValueSource source = parse_value_source(g.mode);
  require_middle_term(n);
  std::optional<Cache> cache;
  if (use_cache) {
    cache.emplace(default_cache_dir());
    if (auto hit = cache->lookup(n, to_string(source));
        hit && (source == ValueSource::Exact || hit->precision_bits == g.precision)) {
      print_value(g, *hit);
      return 0;
    }
  }
  const CacheRecord c = compute_value(n, source, g.precision);
  if (cache) cache->store(c);
  print_value(g, c);
  return 0;
}

int cmd_spectrum(int n, const std::string& path) {
  const CoefficientSpectrum s = expand(n);
  const auto coeffs = s.to_vector();
  std::vector<BFileEntry> entries;
  entries.reserve(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) entries.push_back({static_cast<std::int64_t>(j), coeffs[j]});
  const std::string text = write_bfile(entries);
  if (path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return 1;
  }
  return 0;
}

int cmd_estimate(const Globals& g, const std::string& spec) {
  std::vector<Record> rows;
  for (int n : parse_n_spec(spec)) {
    const ExtendedFloat e = conjecture_estimate(n);
    const ExtendedFloat r = refined_estimate(n);
    Record rec;
    rec.add("schema", std::string("estimate")).add("n", std::int64_t{n});
    rec.add("conjecture", e.to_string(12)).add("conjecture_log2", static_cast<double>(e.log2()));
    rec.add("refined", r.to_string(12)).add("refined_log2", static_cast<double>(r.log2()));
    rec.add("variance_constant", gaussian_variance_constant(n));
    rows.push_back(std::move(rec));
  }
  write_records(std::cout, g.output(), rows);
  return 0;
}

int cmd_ratio_table(const Globals& g, const std::string& spec) {
  const auto ns = parse_n_spec(spec);
  const ValueSource source = parse_value_source(g.mode);
  std::vector<Record> rows;
  for (const RatioRecord& r : ratio_table(ns, source, g.precision)) {
    Record rec;
    rec.add("schema", std::string("ratio")).add("n", std::int64_t{r.n}).add("source", to_string(r.source));
    rec.add("s_log2", r.s_log2).add("estimate_log2", r.estimate_log2).add("refined_log2", r.refined_log2);
    rec.add("ratio_conjecture", r.ratio_conjecture).add("ratio_refined", r.ratio_refined);
    rec.add("s_error_bound", r.s_error_bound);
    rows.push_back(std::move(rec));
  }
  write_records(std::cout, g.output(), rows);
  return 0;
}

int cmd_verify_bounds(const Globals& g, const std::string& ns, int grid, double epsilon, int mono, int period) {
  if (!(epsilon > 0 && epsilon < 0.25)) throw DomainError("--eps must lie in (0, 1/4)");
  if (mono < 1 || period < 1) throw DomainError("sample counts must be positive");
  BoundSuiteConfig config;
  config.ns = parse_int_list(ns);
  config.grid = grid;
  config.epsilon = epsilon;
  config.seed = g.seed;
  config.monotonicity_samples = mono;
  config.periodicity_samples = period;
  const BoundSuiteReport report = verify_lemma_bounds(config);

  std::vector<Record> rows;
  for (const BoundCheck& c : report.checks) {
    Record rec;
    rec.add("schema", std::string("bound_check")).add("name", c.name).add("units", c.units);
    rec.add("samples", static_cast<std::int64_t>(c.samples)).add("violations", static_cast<std::int64_t>(c.violations));
    rec.add("worst_margin", c.worst_margin).add("worst_n", c.worst_n).add("worst_t", c.worst_t);
    rec.add("pass", c.pass());
    rows.push_back(std::move(rec));
  }
  const OutputFormat f = g.output();
  write_records(std::cout, f, rows);
  std::ostream& summary = f == OutputFormat::Text ? std::cout : std::cerr;
  summary << "max_identity_error_over_n=" << format_double(report.max_identity_error_over_n)
          << "  seed=" << g.seed << "  all_pass=" << (report.all_pass() ? "true" : "false") << '\n';
  return report.all_pass() ? 0 : 1;
}

int cmd_quadrature(const Globals& g, int n, int nodes) {
  using boost::multiprecision::mpfr_float;
  require_middle_term(n);
  const QuadratureResult q = integrate_product(n, g.precision, nodes);

  const int digits10 = static_cast<int>(std::ceil(g.precision * 0.30102999566398120));
  const unsigned saved = mpfr_float::default_precision();
  mpfr_float::default_precision(digits10);
  const mpfr_float pi = boost::math::constants::pi<mpfr_float>();
  const mpfr_float integral(q.value);
  const mpfr_float s = ldexp(integral, n) / pi;
  const double scale = std::ldexp(1.0, n) / boost::math::constants::pi<double>();
  const double s_error = q.error_estimate * scale;
  std::string nearest;
  if (s_error < 0.25) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), s.backend().data(), MPFR_RNDN);
    nearest = z.get_str();
  }
  const std::string s_text = s.str(digits10, std::ios_base::scientific);
  const std::string i_text = integral.str(digits10, std::ios_base::scientific);
  mpfr_float::default_precision(saved);

  if (g.output() == OutputFormat::Text) {
    std::cout << "S " << s_text << " +/- " << format_double(s_error) << '\n'
              << "integral " << i_text << " +/- " << format_double(q.error_estimate) << '\n'
              << "panels " << q.panels << "  nodes " << q.nodes_per_panel << "  precision " << q.precision_bits << '\n';
    if (!nearest.empty()) std::cout << "nearest_integer " << nearest << '\n';
    return 0;
  }
  Record rec;
  rec.add("schema", std::string("quadrature")).add("n", std::int64_t{n});
  rec.add("precision_bits", std::int64_t{q.precision_bits}).add("nodes_per_panel", std::int64_t{q.nodes_per_panel});
  rec.add("panels", std::int64_t{q.panels});
  rec.add("integral", i_text).add("integral_error", q.error_estimate);
  rec.add("s", s_text).add("s_error", s_error);
  rec.add("nearest_integer", nearest.empty() ? Field{std::string()} : Field{BigInt{nearest}});
  write_records(std::cout, g.output(), {rec});
  return 0;
}

std::vector<BFileEntry> restrict_to(const std::vector<BFileEntry>& entries, int n_max, bool middle_only) {
  std::vector<BFileEntry> out;
  for (const auto& e : entries) {
    if (e.index < 1 || e.index > n_max) continue;
    if (middle_only && !has_middle_term(e.index)) continue;
    out.push_back(e);
  }
  return out;
}

int cmd_crosscheck(const Globals& g, int n_max, const std::string& bfile, const std::string& url) {
  if (n_max < 1 || n_max > kDefaultExactLimit) throw DomainError("--n-max must lie in [1, 5000]");
  if (!bfile.empty() && !url.empty()) throw DomainError("--bfile and --fetch are exclusive");
  std::string text;
  std::string origin = "bundled";
  if (!bfile.empty()) {
    std::ifstream in(bfile, std::ios::binary);
    if (!in) throw DomainError("cannot read " + bfile);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    origin = bfile;
  } else if (!url.empty()) {
    text = fetch_bfile(url, g.timeout);
    origin = url;
  } else {
    text = std::string(bundled_a025591());
  }
  const auto reference = parse_bfile(text);

  struct Named {
    std::string check;
    CrosscheckReport report;
  };
  const std::vector<Named> reports{
      {"middle", crosscheck(computed_middle_coefficients(n_max), restrict_to(reference, n_max, true))},
      {"max", crosscheck(computed_max_coefficients(n_max), restrict_to(reference, n_max, false))},
  };

  bool ok = true;
  std::vector<Record> rows;
  for (const auto& [check, rep] : reports) {
    for (const auto& item : rep.items) {
      if (!item.equal) {
        std::cerr << "mismatch (" << check << ") n=" << item.index << " computed=" << item.computed.get_str()
                  << " reference=" << item.reference.get_str() << '\n';
      }
    }
    ok = ok && rep.ok() && rep.matches > 0;
    Record rec;
    rec.add("schema", std::string("crosscheck")).add("check", check).add("reference", origin);
    rec.add("n_max", std::int64_t{n_max}).add("matches", static_cast<std::int64_t>(rep.matches));
    rec.add("mismatches", static_cast<std::int64_t>(rep.mismatches));
    rec.add("computed_only", static_cast<std::int64_t>(rep.computed_only));
    rec.add("reference_only", static_cast<std::int64_t>(rep.reference_only));
    rec.add("ok", rep.ok() && rep.matches > 0);
    rows.push_back(std::move(rec));
  }
  write_records(std::cout, g.output(), rows);
  return ok ? 0 : 1;
}

std::vector<Record> cache_rows(const std::vector<CacheRecord>& records) {
  std::vector<Record> rows;
  for (const auto& c : records) {
    Record rec = value_record(c);
    rec.fields.front().second = std::string("cache");
    rows.push_back(std::move(rec));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Middle coefficients of (1+x)(1+x^2)...(1+x^n)", "midcoef"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--precision", g.precision, "Working precision in bits (logdp, quadrature)")->capture_default_str();
  app.add_option("--mode", g.mode, "Value source: exact or logdp")->capture_default_str();
  app.add_option("--format", g.format, "Output format: text, csv or jsonl")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized sweeps")->capture_default_str();
  app.add_option("--timeout", g.timeout, "Fetch timeout in seconds")->capture_default_str();

  int n = 0;
  bool use_cache = false;
  auto* coeff = app.add_subcommand("coeff", "Middle coefficient S(n)");
  coeff->add_option("n", n)->required();
  coeff->add_flag("--cache", use_cache, "Read and update the value cache");

  std::string out_path = "-";
  auto* spectrum = app.add_subcommand("spectrum", "All coefficients as a b-file");
  spectrum->add_option("n", n)->required();
  spectrum->add_option("output", out_path, "Output path, - for stdout")->capture_default_str();

  std::string spec;
  auto* estimate = app.add_subcommand("estimate", "Asymptotic estimates of S(n)");
  estimate->add_option("n", spec, "n, a,b,c or a..b")->required();

  auto* ratio = app.add_subcommand("ratio-table", "S(n) against the asymptotic estimates");
  ratio->add_option("n", spec, "n, a,b,c or a..b")->required();

  std::string bound_ns = "16,32,64,128,256";
  int grid = 2048;
  double epsilon = kDefaultEpsilon;
  int mono = 1000;
  int period = 100;
  auto* verify = app.add_subcommand("verify-bounds", "Sweep the product bounds on jittered grids");
  verify->add_option("--n", bound_ns, "Comma list of n")->capture_default_str();
  verify->add_option("--grid", grid, "Grid points per n")->capture_default_str();
  verify->add_option("--eps", epsilon, "Region split epsilon, in (0, 1/4)")->capture_default_str();
  verify->add_option("--monotonicity-samples", mono)->capture_default_str();
  verify->add_option("--periodicity-samples", period)->capture_default_str();

  int nodes = kDefaultNodesPerPanel;
  auto* quad = app.add_subcommand("quadrature", "S(n) from the cosine-product integral");
  quad->add_option("n", n)->required();
  quad->add_option("--nodes", nodes, "Gauss-Legendre nodes per panel")->capture_default_str();

  int n_max = 60;
  std::string bfile;
  std::string url;
  auto* cross = app.add_subcommand("crosscheck", "Compare against an A025591 b-file");
  cross->add_option("--n-max", n_max)->capture_default_str();
  cross->add_option("--bfile", bfile, "Reference b-file (default: bundled snapshot)");
  cross->add_option("--fetch", url, "Download the reference b-file from URL");

  auto* cache = app.add_subcommand("cache", "Inspect or fill the value cache");
  cache->require_subcommand(1);
  auto* cache_path = cache->add_subcommand("path", "Print the cache file path");
  auto* cache_list = cache->add_subcommand("list", "Print all cached records");
  auto* cache_clear = cache->add_subcommand("clear", "Delete the cache file");
  auto* cache_fill = cache->add_subcommand("fill", "Compute and store values");
  cache_fill->add_option("n", spec, "n, a,b,c or a..b")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    (void)g.output();
    if (*coeff) return cmd_coeff(g, n, use_cache);
    if (*spectrum) return cmd_spectrum(n, out_path);
    if (*estimate) return cmd_estimate(g, spec);
    if (*ratio) return cmd_ratio_table(g, spec);
    if (*verify) return cmd_verify_bounds(g, bound_ns, grid, epsilon, mono, period);
    if (*quad) return cmd_quadrature(g, n, nodes);
    if (*cross) return cmd_crosscheck(g, n_max, bfile, url);
    if (*cache) {
      Cache c(default_cache_dir());
      if (*cache_path) {
        std::cout << c.file().string() << '\n';
      } else if (*cache_list) {
        write_records(std::cout, g.output(), cache_rows(c.records()));
      } else if (*cache_clear) {
        c.clear();
      } else if (*cache_fill) {
        const ValueSource source = parse_value_source(g.mode);
        std::vector<CacheRecord> stored;
        for (int m : parse_n_spec(spec)) {
          stored.push_back(compute_value(m, source, g.precision));
          c.store(stored.back());
        }
        write_records(std::cout, g.output(), cache_rows(stored));
      }
      return 0;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

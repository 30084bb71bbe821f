#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "sqpart/error.hpp"
#include "sqpart/exactcount.hpp"
#include "sqpart/saddle.hpp"
#include "sqpart/simd/kernels.hpp"
#include "sqpart/twosquares.hpp"

namespace sqpart::cli {

using nlohmann::json;

void to_json(json& j, const ComparisonRow& row) {
  j = json{{"n", row.n},
           {"exact_log", row.exact_log},
           {"main_log", row.main_log},
           {"simple_log", row.simple_log},
           {"diff_exact_log", row.diff_exact_log},
           {"diff_est_log", row.diff_est_log},
           {"ratio_main", row.ratio_main}};
}

void from_json(const json& j, ComparisonRow& row) {
  j.at("n").get_to(row.n);
  j.at("exact_log").get_to(row.exact_log);
  j.at("main_log").get_to(row.main_log);
  j.at("simple_log").get_to(row.simple_log);
  j.at("diff_exact_log").get_to(row.diff_exact_log);
  j.at("diff_est_log").get_to(row.diff_est_log);
  j.at("ratio_main").get_to(row.ratio_main);
}

std::vector<std::uint64_t> geometric_range(std::uint64_t from, std::uint64_t to, double factor) {
  if (from == 0 || to < from) throw DomainError("range needs 0 < from <= to");
  if (!(factor > 1.0) || !std::isfinite(factor)) throw DomainError("range factor must exceed 1");
  std::vector<std::uint64_t> out;
  for (int k = 0;; ++k) {
    const double v = std::round(static_cast<double>(from) * std::pow(factor, k));
    if (v > static_cast<double>(to)) break;
    const auto n = static_cast<std::uint64_t>(v);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

std::vector<ComparisonRow> compare_rows(std::vector<std::uint64_t> ns, std::uint64_t cap, double extra_length) {
  if (ns.empty()) throw DomainError("compare needs at least one n");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.front() < saddle::kAsymptoticMinN) throw DomainError("n below asymptotic regime (need n >= 100)");
  const std::uint64_t n_max = ns.back();
  if (n_max > cap) {
    throw ResourceError("largest n " + std::to_string(n_max) + " exceeds DP cap " + std::to_string(cap));
  }

  const auto membership = twosquares::MembershipTable::sieve(n_max + 1);
  const auto table =
      exactcount::partition_counts(n_max + 1, exactcount::PartSet::from_table(membership, n_max + 1), cap + 1);
  const auto phi = saddle::PhiEvaluator::for_saddle(static_cast<double>(n_max), extra_length + 10.0);
  const double K = twosquares::landau_ramanujan_K();

  std::vector<ComparisonRow> rows;
  rows.reserve(ns.size());
  for (std::uint64_t n : ns) {
    ComparisonRow row;
    row.n = n;
    row.exact_log = table.log_count(n);
    const auto main = saddle::main_estimate_log(phi, n, extra_length);
    row.main_log = main.log_value;
    row.simple_log = saddle::simple_estimate_log(n, K).log_value;
    row.diff_exact_log = exactcount::difference_exact(n, table).magnitude.log();
    row.diff_est_log = main.log_value + std::log(main.saddle->u);
    row.ratio_main = std::exp(row.exact_log - row.main_log);
    rows.push_back(row);
  }
  return rows;
}

std::string truncate_decimal(double value, int digits) {
  if (digits < 0 || digits > 30) throw DomainError("digits out of range");
  std::string full = fmt::format("{:.40f}", value);  // exact binary expansion, no rounding at this depth
  const auto dot = full.find('.');
  return digits == 0 ? full.substr(0, dot) : full.substr(0, dot + 1 + static_cast<std::size_t>(digits));
}

namespace {

enum class OutFormat { kCsv, kJson };

struct RunConfig {
  std::string set = "twosquares";
  std::string out = "json";
  std::uint64_t limit = 0;
  std::uint64_t cap = exactcount::kDefaultCountCap;
  double extra_length = 0.0;
  std::string isa;

  // members
  std::string members_format = "text";
  std::string output_path;
  // count
  std::uint64_t n = 0;
  std::string table_format;
  // estimate
  std::string method = "main";
  // compare
  std::vector<std::uint64_t> n_list;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  double factor = 2.0;
  // constant
  int digits = 9;
  // landau / saddle
  double x = 0.0;
};

OutFormat parse_out(const std::string& s) {
  if (s == "csv") return OutFormat::kCsv;
  if (s == "json") return OutFormat::kJson;
  throw DomainError("--out must be csv or json");
}

std::string num(double v) { return fmt::format("{}", v); }

/// Writes to --output when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
      if (!*file_) throw DomainError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void require_twosquares(const RunConfig& cfg) {
  if (cfg.set != "twosquares") throw DomainError("asymptotic commands support only --set twosquares");
}

exactcount::PartSet resolve_set(const RunConfig& cfg, std::uint64_t n_max) {
  if (cfg.set == "twosquares") {
    const std::uint64_t limit = std::max<std::uint64_t>({cfg.limit, n_max, 1});
    return exactcount::PartSet::from_table(twosquares::MembershipTable::sieve(limit), n_max);
  }
  if (cfg.set == "all") return exactcount::PartSet::all_positive(n_max);
  if (cfg.set.rfind("file:", 0) == 0) {
    const std::string path = cfg.set.substr(5);
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open part-set file " + path);
    return exactcount::read_part_set(in, path);
  }
  throw DomainError("--set must be twosquares, all, or file:PATH");
}

json saddle_json(const saddle::SaddlePoint& sp) {
  return json{{"x", sp.x}, {"rho", sp.rho}, {"X", sp.X}, {"residual", sp.residual}};
}

void emit_record(std::ostream& out, OutFormat fmt, const json& record, const std::vector<std::string>& keys) {
  if (fmt == OutFormat::kJson) {
    out << record.dump() << '\n';
    return;
  }
  std::vector<std::string> cells;
  for (const auto& key : keys) {
    const json& v = record.at(key);
    if (v.is_number_float()) cells.push_back(num(v.get<double>()));
    else if (v.is_string()) cells.push_back(v.get<std::string>());
    else cells.push_back(v.dump());
  }
  out << fmt::format("{}\n{}\n", fmt::join(keys, ","), fmt::join(cells, ","));
}

int cmd_members(const RunConfig& cfg, std::ostream& out) {
  const auto table = twosquares::MembershipTable::sieve(cfg.limit);
  if (cfg.members_format == "text") {
    Sink sink(cfg.output_path, out, false);
    twosquares::write_members_text(table, sink.get());
  } else if (cfg.members_format == "bitset") {
    Sink sink(cfg.output_path, out, true);
    twosquares::write_bitset(table, sink.get());
  } else {
    throw DomainError("--format must be text or bitset");
  }
  return kOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const auto set = resolve_set(cfg, cfg.n);
  const auto table = exactcount::partition_counts(cfg.n, set, cfg.cap);
  if (cfg.table_format.empty()) {
    out << table.count(cfg.n).to_decimal() << '\n';
  } else if (cfg.table_format == "csv") {
    Sink sink(cfg.output_path, out, false);
    exactcount::write_csv(table, sink.get());
  } else if (cfg.table_format == "binary") {
    Sink sink(cfg.output_path, out, true);
    exactcount::write_binary(table, sink.get());
  } else {
    throw DomainError("--table must be csv or binary");
  }
  return kOk;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  require_twosquares(cfg);
  const auto method = saddle::parse_method(cfg.method);
  if (cfg.n < saddle::kAsymptoticMinN) throw DomainError("n below asymptotic regime (need n >= 100)");
  const auto phi = saddle::PhiEvaluator::for_saddle(static_cast<double>(cfg.n), cfg.extra_length + 10.0);
  saddle::LogEstimate est;
  switch (method) {
    case saddle::Method::kMain:
      est = saddle::main_estimate_log(phi, cfg.n, cfg.extra_length);
      break;
    case saddle::Method::kDifference:
      est = saddle::difference_estimate_log(phi, cfg.n, cfg.extra_length);
      break;
    case saddle::Method::kSimple:
      est = saddle::simple_estimate_log(cfg.n, twosquares::landau_ramanujan_K());
      est.saddle = saddle::solve_saddle(phi, static_cast<double>(cfg.n), cfg.extra_length);
      break;
  }
  const json record{{"n", est.n},
                    {"method", std::string(saddle::method_name(est.method))},
                    {"log_value", est.log_value},
                    {"rho", est.saddle->rho},
                    {"X", est.saddle->X},
                    {"residual", est.saddle->residual}};
  emit_record(out, parse_out(cfg.out), record, {"n", "method", "log_value", "rho", "X", "residual"});
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  require_twosquares(cfg);
  const OutFormat fmt = parse_out(cfg.out);
  std::vector<std::uint64_t> ns = cfg.n_list;
  if (ns.empty() == (cfg.from == 0)) throw DomainError("compare needs exactly one of --n or --from/--to");
  if (ns.empty()) ns = geometric_range(cfg.from, cfg.to, cfg.factor);
  const auto rows = compare_rows(ns, cfg.cap, cfg.extra_length);

  std::ostringstream buf;
  if (fmt == OutFormat::kJson) {
    buf << json(rows).dump() << '\n';
  } else {
    buf << "n,exact_log,main_log,simple_log,diff_exact_log,diff_est_log,ratio_main\n";
    for (const auto& r : rows) {
      buf << r.n << ',' << num(r.exact_log) << ',' << num(r.main_log) << ',' << num(r.simple_log) << ','
          << num(r.diff_exact_log) << ',' << num(r.diff_est_log) << ',' << num(r.ratio_main) << '\n';
    }
  }
  out << buf.str();
  return kOk;
}

int cmd_constant(const RunConfig& cfg, std::ostream& out) {
  if (cfg.digits < 1 || cfg.digits > 15) throw DomainError("--digits must lie in [1, 15]");
  // The long-double evaluation bottoms out near 1.4e-16; the straddle check covers the last digit.
  const double target = std::max(std::pow(10.0, -(cfg.digits + 1)), 2.5e-16);
  const auto approx = twosquares::landau_ramanujan_constant(target);
  const std::string text = truncate_decimal(approx.value, cfg.digits);
  if (truncate_decimal(approx.value - approx.abs_error_bound, cfg.digits) != text ||
      truncate_decimal(approx.value + approx.abs_error_bound, cfg.digits) != text) {
    throw NumericError("error bound straddles a digit boundary; cannot certify the truncation");
  }
  out << text << '\n';
  return kOk;
}

int cmd_landau(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.x > std::exp(1.0))) throw DomainError("landau needs x > e (log x too small)");
  const auto x = static_cast<std::uint64_t>(std::floor(cfg.x));
  const auto table = twosquares::MembershipTable::sieve(std::max(x, cfg.limit));
  const double K = twosquares::landau_ramanujan_K();
  const std::uint64_t count = table.count_up_to(x);
  const double reference = twosquares::landau_reference(static_cast<double>(x), K);
  const json record{{"x", x}, {"count", count}, {"reference", reference},
                    {"ratio", static_cast<double>(count) / reference}};
  emit_record(out, parse_out(cfg.out), record, {"x", "count", "reference", "ratio"});
  return kOk;
}

int cmd_saddle(const RunConfig& cfg, std::ostream& out) {
  require_twosquares(cfg);
  const auto phi = saddle::PhiEvaluator::for_saddle(cfg.x, cfg.extra_length + 10.0);
  const auto sp = saddle::solve_saddle(phi, cfg.x, cfg.extra_length);
  emit_record(out, parse_out(cfg.out), saddle_json(sp), {"x", "rho", "X", "residual"});
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact and asymptotic counts of partitions into sums of two squares", "sqpart"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--set", cfg.set, "Part set: twosquares | all | file:PATH")->capture_default_str();
  app.add_option("--out", cfg.out, "Record format: csv | json")->capture_default_str();
  app.add_option("--limit", cfg.limit, "Membership table limit");
  app.add_option("--cap", cfg.cap, "Largest n for the exact DP")->capture_default_str();
  app.add_option("--extra-length", cfg.extra_length, "Extra truncation length added to L")->check(CLI::NonNegativeNumber);
  app.add_option("--isa", cfg.isa, "Force a kernel variant: scalar | avx2");

  auto* members = app.add_subcommand("members", "List sums of two squares up to --limit");
  members->add_option("--format", cfg.members_format, "text | bitset")->capture_default_str();
  members->add_option("--output", cfg.output_path, "Write to a file instead of stdout");

  auto* count = app.add_subcommand("count", "Exact partition count p_A(n)");
  count->add_option("--n", cfg.n, "Target n")->required();
  count->add_option("--table", cfg.table_format, "Export the whole table: csv | binary");
  count->add_option("--output", cfg.output_path, "Write the table to a file");

  auto* estimate = app.add_subcommand("estimate", "Asymptotic estimate as a log-space record");
  estimate->add_option("--n", cfg.n, "Target n (>= 100)")->required();
  estimate->add_option("--method", cfg.method, "main | simple | difference")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Exact versus asymptotic table");
  compare->add_option("--n", cfg.n_list, "Explicit list of n")->delimiter(',');
  compare->add_option("--from", cfg.from, "Geometric range start");
  compare->add_option("--to", cfg.to, "Geometric range end");
  compare->add_option("--factor", cfg.factor, "Geometric range ratio")->capture_default_str();

  auto* constant = app.add_subcommand("constant", "Landau-Ramanujan constant, truncated to --digits");
  constant->add_option("--digits", cfg.digits, "Decimal digits (1..15)")->capture_default_str();

  auto* landau = app.add_subcommand("landau", "Count of sums of two squares up to x against K x / sqrt(log x)");
  landau->add_option("--x", cfg.x, "Upper bound x")->required();

  auto* saddle_cmd = app.add_subcommand("saddle", "Solve x = rho Phi'(rho)");
  saddle_cmd->add_option("--x", cfg.x, "Target x (>= 10)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (!cfg.isa.empty()) simd::set_active_isa(simd::parse_isa(cfg.isa));
    if (members->parsed()) return cmd_members(cfg, out);
    if (count->parsed()) return cmd_count(cfg, out);
    if (estimate->parsed()) return cmd_estimate(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (constant->parsed()) return cmd_constant(cfg, out);
    if (landau->parsed()) return cmd_landau(cfg, out);
    if (saddle_cmd->parsed()) return cmd_saddle(cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace sqpart::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace sqpart::cli {

/// Exit codes of the sqpart tool.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kResource = 3,
  kNumeric = 4,
};

/// Exact-versus-asymptotic comparison at one n; all logs are natural.
struct ComparisonRow {
  std::uint64_t n = 0;
  double exact_log = 0.0;
  double main_log = 0.0;
  double simple_log = 0.0;
  double diff_exact_log = 0.0;
  double diff_est_log = 0.0;
  double ratio_main = 0.0;  ///< exp(exact_log - main_log)

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

void to_json(nlohmann::json& j, const ComparisonRow& row);
void from_json(const nlohmann::json& j, ComparisonRow& row);

/// One exact DP pass to max(ns) + 1, then the estimates for each n (ascending, deduplicated).
std::vector<ComparisonRow> compare_rows(std::vector<std::uint64_t> ns, std::uint64_t cap, double extra_length);

/// round(from * factor^k) for k = 0, 1, ... while <= to. Requires factor > 1.
std::vector<std::uint64_t> geometric_range(std::uint64_t from, std::uint64_t to, double factor);

/// Value truncated (not rounded) to `digits` decimals, e.g. 0.764223653 for digits = 9.
std::string truncate_decimal(double value, int digits);

/// Parses argv and executes one subcommand; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqpart::cli

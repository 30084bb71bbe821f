#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sqpart/exactcount.hpp"
#include "sqpart/twosquares.hpp"

using nlohmann::json;
using namespace sqpart;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sqpart");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sqpart_test_" + name);
}

}  // namespace

TEST_CASE("members") {
  auto r = invoke({"members", "--limit", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n2\n4\n5\n8\n9\n10\n");
  CHECK(invoke({"members", "--limit", "1"}).out == "1\n");
  r = invoke({"members", "--limit", "0"});
  CHECK(r.code == cli::kUsage);
  CHECK_FALSE(r.err.empty());

  const auto path = temp_file("members.bin");
  CHECK(invoke({"members", "--limit", "1000", "--format", "bitset", "--output", path.string()}).code == 0);
  std::ifstream in(path, std::ios::binary);
  CHECK(twosquares::read_bitset(in) == twosquares::MembershipTable::sieve(1000));
  std::filesystem::remove(path);
}

TEST_CASE("count") {
  CHECK(invoke({"count", "--n", "4"}).out == "4\n");
  CHECK(invoke({"count", "--n", "0"}).out == "1\n");
  CHECK(invoke({"--set", "all", "count", "--n", "100"}).out == "190569292\n");
  CHECK(invoke({"--cap", "10", "count", "--n", "11"}).code == cli::kResource);
  CHECK(invoke({"--set", "bogus", "count", "--n", "5"}).code == cli::kUsage);

  const auto parts = temp_file("parts.txt");
  {
    std::ofstream f(parts);
    f << "1\n3\n5\n";
  }
  // Partitions of 6 into 1, 3, 5: 1^6, 3+1^3, 3+3, 5+1.
  CHECK(invoke({"--set", "file:" + parts.string(), "count", "--n", "6"}).out == "4\n");
  {
    std::ofstream f(parts);
    f << "3\n1\n";
  }
  CHECK(invoke({"--set", "file:" + parts.string(), "count", "--n", "6"}).code == cli::kUsage);
  std::filesystem::remove(parts);

  const auto table = temp_file("table.bin");
  CHECK(invoke({"count", "--n", "300", "--table", "binary", "--output", table.string()}).code == 0);
  std::ifstream in(table, std::ios::binary);
  const auto loaded = exactcount::read_binary(in);
  CHECK(loaded.n_max() == 300);
  CHECK(loaded.count(300).to_decimal() + "\n" == invoke({"count", "--n", "300"}).out);
  std::filesystem::remove(table);

  const auto csv = invoke({"count", "--n", "4", "--table", "csv"}).out;
  CHECK(csv == "n,count\n0,1\n1,1\n2,2\n3,2\n4,4\n");
}

TEST_CASE("estimate records") {
  auto r = invoke({"estimate", "--n", "50"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("n below asymptotic regime") != std::string::npos);

  r = invoke({"estimate", "--n", "10000"});
  REQUIRE(r.code == 0);
  const auto main = json::parse(r.out);
  for (const char* key : {"n", "method", "log_value", "rho", "X", "residual"}) CHECK(main.contains(key));
  CHECK(main.size() == 6);
  CHECK(main["method"] == "main");
  CHECK(main["residual"].get<double>() <= 1e-12 * 10000);

  const auto diff = json::parse(invoke({"estimate", "--n", "10000", "--method", "difference"}).out);
  CHECK(diff["log_value"].get<double>() ==
        doctest::Approx(main["log_value"].get<double>() - std::log(main["X"].get<double>())).epsilon(1e-14));
  CHECK(invoke({"estimate", "--n", "10000", "--method", "fancy"}).code == cli::kUsage);
  CHECK(invoke({"--set", "all", "estimate", "--n", "10000"}).code == cli::kUsage);

  const auto simple = json::parse(invoke({"estimate", "--n", "10000", "--method", "simple"}).out);
  CHECK(simple["rho"] == main["rho"]);
}

TEST_CASE("compare over a geometric range") {
  const auto r = invoke({"--out", "csv", "compare", "--from", "1000", "--to", "20000", "--factor", "2"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,exact_log,main_log,simple_log,diff_exact_log,diff_est_log,ratio_main");
  std::vector<double> deviation;
  std::vector<std::uint64_t> ns;
  while (std::getline(lines, line)) {
    ns.push_back(std::stoull(line.substr(0, line.find(','))));
    deviation.push_back(std::abs(std::stod(line.substr(line.rfind(',') + 1)) - 1.0));
  }
  CHECK(ns == std::vector<std::uint64_t>{1000, 2000, 4000, 8000, 16000});
  for (std::size_t i = 1; i < deviation.size(); ++i) CHECK(deviation[i] < deviation[i - 1]);

  const auto again = invoke({"--out", "csv", "compare", "--from", "1000", "--to", "20000", "--factor", "2"});
  CHECK(again.out == r.out);

  const auto single = json::parse(invoke({"compare", "--n", "1000"}).out);
  CHECK(single.size() == 1);
  CHECK(invoke({"compare", "--n", "1000", "--from", "10"}).code == cli::kUsage);
  CHECK(invoke({"compare", "--from", "1000", "--to", "10"}).code == cli::kUsage);
  CHECK(invoke({"--cap", "5000", "compare", "--n", "6000"}).code == cli::kResource);
}

TEST_CASE("comparison rows and records round-trip through JSON") {
  const auto rows = cli::compare_rows({2000, 1000, 2000}, exactcount::kDefaultCountCap, 0.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 1000);
  const json emitted = rows;
  CHECK(json::parse(emitted.dump()).get<std::vector<cli::ComparisonRow>>() == rows);
  for (const auto& row : rows) {
    CHECK(row.ratio_main > 0.0);
    CHECK(row.ratio_main == doctest::Approx(std::exp(row.exact_log - row.main_log)));
  }

  for (const auto& args : std::vector<std::vector<std::string>>{{"estimate", "--n", "500"},
                                                                {"saddle", "--x", "12345.5"},
                                                                {"landau", "--x", "100000"}}) {
    const auto text = invoke(args).out;
    CHECK(json::parse(text).dump() + "\n" == text);
  }
}

TEST_CASE("geometric range helper") {
  CHECK(cli::geometric_range(1250, 20000, 2.0) == std::vector<std::uint64_t>{1250, 2500, 5000, 10000, 20000});
  CHECK(cli::geometric_range(100, 100, 3.0) == std::vector<std::uint64_t>{100});
  CHECK(cli::geometric_range(1, 5, 1.1) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
  CHECK_THROWS(cli::geometric_range(10, 100, 1.0));
  CHECK_THROWS(cli::geometric_range(0, 100, 2.0));
}

TEST_CASE("constant and landau reports") {
  CHECK(invoke({"constant", "--digits", "9"}).out == "0.764223653\n");
  CHECK(invoke({"constant", "--digits", "15"}).out == "0.764223653589220\n");
  CHECK(invoke({"constant", "--digits", "16"}).code == cli::kUsage);
  CHECK(invoke({"constant", "--digits", "0"}).code == cli::kUsage);
  CHECK(cli::truncate_decimal(0.129, 2) == "0.12");
  CHECK(cli::truncate_decimal(2.5, 0) == "2");

  const auto r = invoke({"landau", "--x", "1e7"});
  REQUIRE(r.code == 0);
  const auto rec = json::parse(r.out);
  CHECK(rec["count"] == twosquares::MembershipTable::sieve(10'000'000).count_up_to(10'000'000));
  CHECK(rec["ratio"].get<double>() >= 0.9);
  CHECK(rec["ratio"].get<double>() <= 1.1);
  CHECK(invoke({"landau", "--x", "2"}).code == cli::kUsage);
}

TEST_CASE("saddle and usage errors") {
  auto r = invoke({"--out", "csv", "saddle", "--x", "1e6"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,rho,X,residual\n", 0) == 0);
  CHECK(invoke({"saddle", "--x", "5"}).code == cli::kUsage);
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"count"}).code == cli::kUsage);
  CHECK(invoke({"--out", "xml", "saddle", "--x", "100"}).code == cli::kUsage);
  CHECK(invoke({"--isa", "scalar", "count", "--n", "4"}).out == "4\n");
  CHECK(invoke({"--help"}).code == 0);
}

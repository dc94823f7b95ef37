#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lupi::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNoConvergence = 2 };

enum class OutputFormat { kCsv, kJson };

/// Flags of one invocation after parsing (flags > LUPI_* environment > defaults).
struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::string strategy_source = "uniform";
  std::string pi_source = "uniform";
  std::optional<double> c0;
  std::optional<int> depth;
  std::optional<std::int64_t> rounds;
  std::uint64_t seed = 20090101;
  int shards = 1;
  double tol = 1e-12;
  OutputFormat format = OutputFormat::kCsv;
  std::optional<std::string> output_path;
  std::string figure;
  std::vector<int> n_list;
  bool symbolic = false;

  int subset_cap = 25;
  int n_max_symbolic = 8;
  std::string cache_path = ".lupi_ne_cache.json";
  bool use_cache = true;
};

/// Parses "3,4,7" and ranges such as "3-12" (mixable: "3,5-7").
std::vector<int> parse_n_list(const std::string& text);

/// Entry point shared by the binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lupi::cli

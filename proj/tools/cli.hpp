#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zss/scorer.hpp"

namespace zss::cli {

inline constexpr std::uint64_t kDefaultSeed = 2019;

/// Effective run configuration: JSON file, then ZS_* environment, then flags.
struct RunConfig {
  ScorerConfig scorer;
  std::optional<std::filesystem::path> wordnet_dir;
  std::optional<std::filesystem::path> snapshot;
  /// subtask ("A"/"B") -> split ("train"/"dev"/"test") -> CSV path
  std::map<std::string, std::map<std::string, std::filesystem::path>> datasets;
  std::filesystem::path output_dir = "zss-out";
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 1;
  ProbMode prob_mode = ProbMode::kDropNeutral;
};

/// Reads a JSON config; relative paths resolve against the file's directory.
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical JSON of the effective configuration (sorted keys).
std::string config_json(const RunConfig& config);

/// Runs the `zss` command line. Returns the process exit code:
/// 0 ok, 2 usage, 3 data/format, 4 backend, 5 cache miss.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zss::cli

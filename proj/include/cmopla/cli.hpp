#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmopla/core.hpp"
#include "cmopla/pipeline.hpp"

namespace cmopla::cli {

/// Process exit codes; stable across versions.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kConfigError = 2,
  kPreconditionFailure = 3,
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ProblemEntry {
  std::string id;
  std::string source;
  std::string builtin;  // empty for sample-file problems
  std::size_t n = 2;
  std::vector<std::filesystem::path> sample_files;
  std::optional<ProblemMeta> meta;
};

struct RunConfig {
  std::vector<ProblemEntry> problems;
  std::size_t sample_sets = 30;
  std::optional<std::size_t> sample_size;  // nullopt: n * 1000
  std::uint64_t walk_seed_base = 0;
  std::optional<std::filesystem::path> performance_path;
  std::optional<std::filesystem::path> features_path;
  std::string projection = "builtin";  // or a JSON path
  std::filesystem::path out_dir = "out";
  std::size_t threads = 1;
  std::optional<std::vector<std::string>> retained_features;
};

/// Parses a config document; relative paths resolve against `base_dir`.
/// Throws ConfigError.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// `auto` or a positive integer; nullopt when malformed.
std::optional<std::size_t> parse_threads(const std::string& text);

/// Throws ConfigError for missing inputs. `need_performance` for pipeline.
void check_paths(const RunConfig& config, bool need_performance);

struct FeatureRun {
  FeatureTable table;
  std::vector<std::string> errors;  // one line per failed instance
};

/// Global and walk features for every (problem, set); work is spread over
/// `config.threads` workers and merged in (problem, set) order.
FeatureRun compute_features(const RunConfig& config);

/// Full command-line entry point. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmopla::cli

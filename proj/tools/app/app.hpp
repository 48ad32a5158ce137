#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace weyllab::app {

using Json = nlohmann::ordered_json;

/// A cached count table failed validation; the file has been quarantined.
class CacheCorruption : public std::runtime_error {
public:
  CacheCorruption(const std::string& what, std::filesystem::path quarantined)
      : std::runtime_error(what), quarantined_(std::move(quarantined)) {}
  const std::filesystem::path& quarantined() const { return quarantined_; }

private:
  std::filesystem::path quarantined_;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalid = 2,
  kExitBudget = 3,
  kExitCorrupt = 4,
};

struct ExperimentConfig {
  std::string command;
  /// Command parameters after merging defaults, config file and flags, validated and typed.
  Json params = Json::object();
  std::string format = "json";
  /// Empty means stdout.
  std::string output;
  std::filesystem::path cache_dir;
  bool use_cache = true;
  std::uint64_t seed = 1;
  std::size_t threads = 0;

  /// The reproducible part of the configuration (no paths).
  Json snapshot() const;
};

struct ArtifactDigest {
  std::string path;
  std::uint64_t bytes = 0;
  std::string sha256;
};

struct RunManifest {
  Json config;
  std::string version;
  std::string started;
  std::string finished;
  std::vector<ArtifactDigest> outputs;

  Json to_json() const;
};

/// Commands known to the dispatcher.
const std::vector<std::string>& command_names();

/// Parameter names a command accepts.
std::vector<std::string> parameter_names(const std::string& command);

/// Builds a validated config. `flags` holds the explicitly given command-line
/// values as strings; `file` is the parsed config file (may be null).
/// Precedence is flags > file > defaults. Throws InvalidArgument on unknown
/// keys, malformed values or out-of-range values.
ExperimentConfig make_config(const std::string& command, const Json& flags, const Json& file);

/// Default cache location: WEYLLAB_CACHE_DIR, else $XDG_CACHE_HOME/weyllab, else ~/.cache/weyllab.
std::filesystem::path default_cache_dir();

/// Runs one command; writes its output atomically and returns the manifest.
RunManifest run(const ExperimentConfig& config);

/// Produces the command output in memory (used by run and by tests).
std::string render(const ExperimentConfig& config);

/// Removes every cached table; returns the number of files removed.
std::size_t clear_cache(const std::filesystem::path& dir);

/// Writes `content` to `path` through a temporary file in the same directory and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& content);

std::string sha256_hex(const std::string& content);

/// Maps an exception to the documented exit code.
int exit_code_for(const std::exception& e);

std::string version_tag();

}  // namespace weyllab::app

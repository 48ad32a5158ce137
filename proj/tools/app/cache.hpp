#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "weyllab/arithmetic.hpp"

namespace weyllab::app {

/// Directory of binary count tables keyed by (s, k, N, part bound).
///
/// Readers hold a shared flock on <dir>/.lock and writers an exclusive one.
/// Entries are replaced atomically, so a reader never sees a partial file.
class CountCache {
public:
  explicit CountCache(std::filesystem::path dir);

  /// nullopt on a miss. A file that fails validation is moved to
  /// <dir>/quarantine and CacheCorruption is thrown.
  std::optional<CountTable> load(int s, int k, std::uint64_t N, std::optional<std::uint64_t> part_bound) const;
  void store(const CountTable& table) const;
  std::filesystem::path path_for(int s, int k, std::uint64_t N, std::optional<std::uint64_t> part_bound) const;

  const std::filesystem::path& dir() const { return dir_; }

private:
  std::filesystem::path dir_;
};

}  // namespace weyllab::app

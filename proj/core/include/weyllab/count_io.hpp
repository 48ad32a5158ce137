#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "weyllab/arithmetic.hpp"

namespace weyllab {

inline constexpr std::uint16_t kCountTableFormatVersion = 1;

/// Binary layout, all integers little-endian:
///   "WLCT" | u16 version | u8 has_bound | u32 s | u32 k | u64 N | u64 bound | u64 length
///   | length x (u16 byte count, magnitude bytes) | u64 FNV-1a digest of everything before it.
void write_count_table(std::ostream& out, const CountTable& table);

/// Throws CorruptData on a bad header, truncation, digest mismatch or trailing bytes.
CountTable read_count_table(std::istream& in);

/// "l,count" header then one row per l = 1..N.
void write_counts_csv(std::ostream& out, const CountTable& table);

/// File name used by the count cache for a given key.
std::string count_table_cache_name(int s, int k, std::uint64_t N, std::optional<std::uint64_t> part_bound);

}  // namespace weyllab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wlde/lattice.hpp"

namespace wlde {

/// Formats a double with 17 significant digits ('%.17g'), which round-trips
/// exactly: all CSV output goes through this.
std::string format_double(double value);

/// FNV-1a 64-bit content hash, hex encoded; used by artifact manifests.
uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_hex(const std::string& content);

/// Trajectory CSV: a comment line with the config hash, a header row, then
/// one row per stored generation and one column per site.  LF endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const std::string& config_hash);

/// Compact binary dump.  Layout, all integers little endian:
///   magic "WLDE1" | u32 dimension | u64 nx | u64 ny | u64 field count
///   | u64 stride | u64 generations | fields as f64 row major.
void write_trajectory_wlde1(std::ostream& out, const Trajectory& trajectory);
Trajectory read_trajectory_wlde1(std::istream& in);

}  // namespace wlde

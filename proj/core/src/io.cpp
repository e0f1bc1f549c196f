#include "wlde/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace wlde {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t hash = 1469598103934665603ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string fnv1a64_hex(const std::string& content) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                (unsigned long long)fnv1a64(content.data(), content.size()));
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const std::string& config_hash) {
  out << "# config_hash=" << config_hash << "\n";
  out << "generation";
  for (int i = 0; i < trajectory.config.sites(); ++i) {
    out << ",site_" << i;
  }
  out << "\n";
  for (const LatticeField& field : trajectory.fields) {
    out << field.generation;
    for (double v : field.values) out << ',' << format_double(v);
    out << "\n";
  }
}

namespace {

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<uint64_t>(v));
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_trajectory_wlde1(std::ostream& out, const Trajectory& trajectory) {
  out.write("WLDE1", 5);
  put_u32(out, uint32_t(trajectory.config.dimension));
  put_u64(out, uint64_t(trajectory.config.nx));
  put_u64(out, uint64_t(trajectory.config.ny));
  put_u64(out, uint64_t(trajectory.fields.size()));
  put_u64(out, uint64_t(trajectory.stride));
  put_u64(out, uint64_t(trajectory.generations));
  for (const LatticeField& field : trajectory.fields) {
    for (double v : field.values) put_f64(out, v);
  }
}

Trajectory read_trajectory_wlde1(std::istream& in) {
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, "WLDE1", 5) != 0) {
    throw std::runtime_error("wlde1: bad magic");
  }
  Trajectory traj;
  traj.config.dimension = int(get_u32(in));
  traj.config.nx = int(get_u64(in));
  traj.config.ny = int(get_u64(in));
  const uint64_t count = get_u64(in);
  traj.stride = int(get_u64(in));
  traj.generations = int(get_u64(in));
  traj.fields.resize(count);
  int stored = 0;
  for (LatticeField& field : traj.fields) {
    field.generation = (stored + 1 == int(count)) ? traj.generations
                                                  : stored * traj.stride;
    field.values.resize(std::size_t(traj.config.nx) * traj.config.ny);
    for (double& v : field.values) v = get_f64(in);
    ++stored;
  }
  if (!in) throw std::runtime_error("wlde1: truncated stream");
  return traj;
}

}  // namespace wlde

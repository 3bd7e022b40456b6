#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "brownsim/core/particles.hpp"

namespace brownsim {

/// Positions, 1-based type numbers as written to disk, box length and time.
struct Snapshot {
  Real length = 1;
  Real time = 0;
  std::vector<Vec2> pos;
  std::vector<std::uint32_t> types;

  std::size_t size() const { return pos.size(); }
};

Snapshot make_snapshot(const ParticleSystem& sys, Real time);

void write_snapshot(const Snapshot& snap, std::ostream& out);
void write_snapshot(const ParticleSystem& sys, Real time, const std::filesystem::path& path);
void write_snapshot(const Snapshot& snap, const std::filesystem::path& path);
/// Throws IoError naming the line for malformed input.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Per-particle 0/1 flags (which particles took part in an overlap correction).
void write_flags(std::span<const std::uint8_t> flags, const std::filesystem::path& path);
std::vector<std::uint8_t> read_flags(const std::filesystem::path& path);

}  // namespace brownsim

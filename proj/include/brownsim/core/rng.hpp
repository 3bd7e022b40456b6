#pragma once

#include <array>
#include <cstdint>

#include "brownsim/core/vec2.hpp"

namespace brownsim {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The 128-bit counter
/// is split into a 64-bit block counter and a 64-bit stream id; the key is the seed.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Sequential view of one Philox stream. Same (seed, stream, counter) gives the same
/// sequence on any thread, so per-particle streams are order-insensitive.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller; the second variate of each pair is cached).
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// Stream ids are (purpose << 40) | index so that each consumer owns a disjoint range.
enum class StreamPurpose : std::uint64_t {
  kLatticeSample = 1,
  kTypeAssignment = 2,
  kTranslation = 3,
  kRotation = 4,
  kInitialAngle = 5,
  kBuildPerturbation = 6,
  kTest = 15,
};

constexpr std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t index) {
  return (static_cast<std::uint64_t>(purpose) << 40) | index;
}

/// Returns z truncated to [-limit, limit].
inline Real clamp_normal(Real z, Real limit) { return z < -limit ? -limit : (z > limit ? limit : z); }

/// One standard normal draw truncated to [-limit, limit]; consumes exactly one draw.
inline Real clamped_gaussian(RngStream& rng, Real limit = 3) {
  return clamp_normal(static_cast<Real>(rng.normal()), limit);
}

}  // namespace brownsim

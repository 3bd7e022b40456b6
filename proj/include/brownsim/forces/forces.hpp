#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "brownsim/core/particles.hpp"
#include "brownsim/core/vec2.hpp"

namespace brownsim {

class VerletList;

enum class ForceKind { kLongRange, kShortRange };

struct ForceLaw {
  ForceKind kind = ForceKind::kLongRange;
  Real r_cutoff = 2.5;  ///< short range only

  static ForceLaw long_range() { return {ForceKind::kLongRange, 0}; }
  static ForceLaw short_range(Real cutoff) { return {ForceKind::kShortRange, cutoff}; }
};

/// How pair contributions are summed into per-particle slots.
enum class Accumulation {
  kDeterministic,  ///< gather per particle in ascending neighbour order
  kAtomic,         ///< scatter with atomic adds; order depends on scheduling
};

/// Force on i from k: mu_i * alpha_k * r / |r|^3 (long) or / |r|^7 within the cutoff
/// (short), with r = r_i - r_k under minimum image. Throws SingularityError at r = 0.
Vec2 pair_force(const ForceLaw& law, Real mu_i, Real alpha_k, Vec2 r_ik);

/// Same formula without the singularity check; r2 = |r|^2 > 0.
inline Vec2 pair_force_unchecked(const ForceLaw& law, Real mu_i, Real alpha_k, Vec2 r, Real r2) {
  Real denom = r2 * std::sqrt(r2);
  if (law.kind == ForceKind::kShortRange) {
    if (r2 > law.r_cutoff * law.r_cutoff) return {0, 0};
    denom *= r2 * r2;
  }
  const Real s = mu_i * alpha_k / denom;
  return {r.x * s, r.y * s};
}

inline constexpr std::size_t kDefaultTile = 32;

/// All N(N-1) directed long-range terms, accumulated per particle in ascending source
/// order over tiles of `tile` staged particles. Writes out[i] for every i.
void long_range_forces(const ParticleSystem& sys, std::span<Vec2> out,
                       std::size_t tile = kDefaultTile);

/// Short-range forces over the pairs of a Verlet list built for these particles.
void short_range_forces(const ParticleSystem& sys, const VerletList& list, Real r_cutoff,
                        std::span<Vec2> out, Accumulation mode = Accumulation::kDeterministic);

}  // namespace brownsim

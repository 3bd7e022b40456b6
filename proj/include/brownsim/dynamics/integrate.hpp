#pragma once

#include <cstdint>
#include <span>

#include "brownsim/core/params.hpp"
#include "brownsim/core/particles.hpp"

namespace brownsim {

/// Identifies the random numbers of one integration attempt. Each particle draws from
/// its own stream, positioned by the tick, so results do not depend on thread order.
struct NoiseKey {
  std::uint64_t seed = 0;
  std::uint64_t tick = 0;
};

/// Euler-Maruyama: r_i <- wrap(r_i + F_i dt + xi_i sqrt(D dt)), xi_i per axis a standard
/// normal truncated at params.noise_clamp. noise = false drops the stochastic term.
/// Throws StepFailure naming the particle when a force is not finite.
void integrate(ParticleSystem& sys, std::span<const Vec2> forces, const SimParams& params,
               Real dt, NoiseKey key, bool noise = true);

/// Noise tick for a given step and retry attempt; attempts never share random numbers.
inline std::uint64_t noise_tick(std::uint64_t step, std::uint64_t attempt,
                                std::uint64_t max_rollbacks) {
  return step * (max_rollbacks + 1) + attempt;
}

}  // namespace brownsim

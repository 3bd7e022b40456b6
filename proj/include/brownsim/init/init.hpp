#pragma once

#include <cstdint>
#include <vector>

#include "brownsim/core/box.hpp"
#include "brownsim/core/particles.hpp"
#include "brownsim/core/rng.hpp"

namespace brownsim {

struct ParticleType {
  Real fraction = 1;  ///< concentration phi_i = N_i / N
  Real alpha = 0;     ///< source charge
  Real mu = 0;        ///< response charge
};

struct InitConfig {
  std::size_t n = 0;
  PeriodicBox box{1};
  Real sigma = 1;
  std::vector<ParticleType> types;
  std::uint64_t seed = 0;

  /// Fractions non-negative and summing to 1 within 1e-12.
  void validate() const;
};

/// Triangular lattice commensurate with the periodic box, nearest-neighbour spacing >= sigma.
/// Returns at least n sites; throws ConfigError when the box cannot hold n such sites.
std::vector<Vec2> triangular_lattice(const PeriodicBox& box, Real sigma, std::size_t n);

/// Uniform k-subset of {0..population-1} (Vitter's algorithm R), returned sorted.
std::vector<std::size_t> reservoir_sample(std::size_t population, std::size_t k, RngStream& rng);

/// Lattice positions sampled by reservoir sampling, types drawn independently per particle.
ParticleSystem init_system(const InitConfig& cfg);

}  // namespace brownsim

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "brownsim/core/vec2.hpp"

namespace brownsim {

struct SimParams {
  std::size_t n = 0;
  Real sigma = 1;
  Real dt = 0.01;
  Real diffusion = 0.01;
  /// Short-range force cutoff; ignored by the long-range kernel.
  Real r_cutoff = 2.5;
  /// Verlet skin added to max(r_cutoff, sigma).
  Real skin = 0.5;
  std::size_t max_overlap_iters = 1000;
  std::size_t max_rollbacks = 10;
  std::size_t max_flip_passes = 1000;
  std::size_t max_inversion_passes = 10;
  /// Largest displacement applied to one particle per overlap iteration; 0 means sigma/4.
  Real displacement_cap = 0;
  /// Gaussian draws are truncated to [-noise_clamp, noise_clamp].
  Real noise_clamp = 3;
  /// Relative tolerance of the floating-point in-circle predicate.
  Real incircle_tol = 1e-12;
  /// A pair is overlapping when r < sigma * (1 - overlap_tol).
  Real overlap_tol = 1e-9;

  /// Throws ConfigError; short_range adds the cutoff > sigma requirement.
  void validate(bool short_range) const;

  Real sigma2() const { return sigma * sigma; }
  Real noise_scale(Real step) const { return std::sqrt(diffusion * step); }
  Real overlap_threshold() const { return sigma * (Real(1) - overlap_tol); }
  Real list_radius() const { return std::max(r_cutoff, sigma) + skin; }
  Real cap() const { return displacement_cap > 0 ? displacement_cap : sigma / 4; }
};

}  // namespace brownsim

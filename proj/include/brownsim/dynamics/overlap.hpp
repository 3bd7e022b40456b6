#pragma once

#include <cstdint>
#include <vector>

#include "brownsim/core/params.hpp"
#include "brownsim/core/particles.hpp"
#include "brownsim/dynamics/pair_set.hpp"
#include "brownsim/forces/forces.hpp"

namespace brownsim {

struct OverlapOptions {
  Accumulation accumulation = Accumulation::kDeterministic;
  /// Iterations already spent this step; counts towards params.max_overlap_iters.
  std::size_t iterations_used = 0;
};

/// Pushes overlapping candidate pairs apart until none of them is closer than
/// params.overlap_threshold(). Each iteration sums -(sigma - r) n_hat over a particle's
/// overlapping candidates (n_hat towards the partner), caps the sum at params.cap(),
/// applies it, and marks the particle in flags (resized to N when smaller).
/// Returns the number of iterations that moved particles (0 when already clean).
/// Throws NonConvergenceError when the iteration cap is exceeded.
std::size_t correct_overlaps(ParticleSystem& sys, const PairSet& pairs, const SimParams& params,
                             std::vector<std::uint8_t>& flags, const OverlapOptions& options = {});

}  // namespace brownsim

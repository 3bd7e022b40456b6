#pragma once

#include <cstdint>
#include <span>

#include "brownsim/core/box.hpp"
#include "brownsim/core/particles.hpp"
#include "brownsim/triangulation/periodic_triangulation.hpp"

namespace brownsim {

struct BuildOptions {
  Real incircle_tol = 1e-12;
  /// Seed of the tie-breaking perturbation applied to the planar construction only.
  std::uint64_t perturbation_seed = 0x5eed;
};

/// Periodic Delaunay triangulation of the given points built from scratch: the points
/// are replicated into the neighbouring images, triangulated in the plane, and the
/// triangles anchored in the central copy are folded back onto the torus.
/// Throws BuildError on fewer than 3 points, coincident or collinear input, or when
/// the point set is too sparse for a valid torus triangulation.
PeriodicTriangulation build_initial(const LiftedPoints& pts, const BuildOptions& options = {});
PeriodicTriangulation build_initial(std::span<const Vec2> positions, const PeriodicBox& box,
                                    const BuildOptions& options = {});

}  // namespace brownsim

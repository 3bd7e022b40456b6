#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brownsim/core/box.hpp"
#include "brownsim/core/vec2.hpp"

namespace brownsim {

struct ClusterStats {
  std::size_t count = 0;
  std::size_t largest = 0;
  double largest_fraction = 0;
  /// Number-averaged cluster size N / count.
  double mean_size = 0;
  /// Size seen by a randomly chosen particle, sum(s^2) / N.
  double weighted_mean_size = 0;
  /// Cluster label per particle (labels are dense, 0-based, ordered by first particle).
  std::vector<std::uint32_t> labels;
};

/// Connected components of the contact graph: particles closer than `contact`.
ClusterStats contact_clusters(std::span<const Vec2> pos, const PeriodicBox& box, Real contact);

}  // namespace brownsim

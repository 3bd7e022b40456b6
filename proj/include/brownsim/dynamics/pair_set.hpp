#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "brownsim/core/box.hpp"
#include "brownsim/core/particles.hpp"

namespace brownsim {

class PeriodicTriangulation;
class VerletList;

using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Deduplicated unordered particle pairs (i < j) with a symmetric adjacency sorted by
/// neighbour index, so that per-particle gathers run in a fixed order.
class PairSet {
 public:
  PairSet() = default;
  PairSet(std::size_t particle_count, PairList pairs);

  std::size_t particle_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t size() const { return pairs_.size(); }
  const PairList& pairs() const { return pairs_; }
  std::span<const std::uint32_t> adjacent(std::size_t i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  bool contains(std::uint32_t i, std::uint32_t j) const;

 private:
  PairList pairs_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
};

/// Where overlap-correction candidates come from.
enum class NeighborSource {
  kTriangulation,  ///< edges of the maintained Delaunay triangulation
  kVerlet,         ///< Verlet pairs within sigma + skin at the list snapshot
};

PairSet triangulation_pairs(const PeriodicTriangulation& tri);
PairSet verlet_pairs(const VerletList& list, const PeriodicBox& box, Real max_dist);

/// O(N^2) scan: every pair with minimum-image separation below threshold.
PairList brute_force_overlaps(const ParticleSystem& sys, Real threshold);

}  // namespace brownsim

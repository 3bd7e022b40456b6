#include "brownsim/dynamics/pair_set.hpp"

#include <algorithm>

#include "brownsim/core/parallel.hpp"
#include "brownsim/forces/neighbors.hpp"
#include "brownsim/triangulation/periodic_triangulation.hpp"

namespace brownsim {

PairSet::PairSet(std::size_t particle_count, PairList pairs) {
  for (auto& p : pairs) {
    if (p.second < p.first) std::swap(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                             [](const auto& p) { return p.first == p.second; }),
              pairs.end());
  pairs_ = std::move(pairs);

  offsets_.assign(particle_count + 1, 0);
  for (const auto& [i, j] : pairs_) {
    ++offsets_[i + 1];
    ++offsets_[j + 1];
  }
  for (std::size_t i = 0; i < particle_count; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[particle_count]);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  // pairs_ is sorted by (i, j): lower neighbours of j arrive in ascending i, and the
  // upper neighbours of i in ascending j; lower ones are all placed first.
  for (const auto& [i, j] : pairs_) adjacency_[fill[j]++] = i;
  for (const auto& [i, j] : pairs_) adjacency_[fill[i]++] = j;
}

bool PairSet::contains(std::uint32_t i, std::uint32_t j) const {
  if (i >= particle_count() || j >= particle_count()) return false;
  const auto adj = adjacent(i);
  return std::binary_search(adj.begin(), adj.end(), j);
}

PairSet triangulation_pairs(const PeriodicTriangulation& tri) {
  return PairSet(tri.vertex_count(), tri.edge_pairs());
}

PairSet verlet_pairs(const VerletList& list, const PeriodicBox& box, Real max_dist) {
  return PairSet(list.size(), pairs_within(list, box, max_dist));
}

PairList brute_force_overlaps(const ParticleSystem& sys, Real threshold) {
  const auto n = static_cast<std::int64_t>(sys.size());
  const Real t2 = threshold * threshold;
  const PeriodicBox& box = sys.box();
  std::vector<PairList> found(static_cast<std::size_t>(n));
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      if (norm2(box.min_image(sys.pos[i], sys.pos[j])) < t2) {
        found[i].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    }
  }
  PairList out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

}  // namespace brownsim

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "brownsim/core/box.hpp"
#include "brownsim/core/vec2.hpp"

namespace brownsim {

/// Uniform periodic cell binning. Particles of one cell are stored contiguously in
/// ascending index order.
struct CellGrid {
  PeriodicBox box{1};
  std::size_t cells_per_axis = 0;
  Real cell_edge = 0;
  std::vector<std::uint32_t> cell_start;  // size cells + 1
  std::vector<std::uint32_t> items;
  std::vector<std::uint32_t> cell_of;

  std::size_t cell_count() const { return cells_per_axis * cells_per_axis; }
  std::size_t cell_coord(Real x) const;
  std::size_t cell_index(Vec2 p) const {
    return cell_coord(p.y) * cells_per_axis + cell_coord(p.x);
  }
  std::span<const std::uint32_t> cell(std::size_t c) const {
    return {items.data() + cell_start[c], items.data() + cell_start[c + 1]};
  }
};

/// Grid with floor(L / min_edge) cells per axis. Returns nothing when that is below 3,
/// in which case callers pair particles by brute force.
std::optional<CellGrid> build_cell_grid(std::span<const Vec2> pos, const PeriodicBox& box,
                                        Real min_edge);

/// Half Verlet list: every unordered pair within r_list stored once (j > i), plus the
/// symmetric adjacency used for deterministic gathers. Both sorted by neighbour index.
class VerletList {
 public:
  Real r_list = 0;
  Real skin = 0;
  std::vector<Vec2> snapshot;
  std::vector<std::uint32_t> half_offsets;
  std::vector<std::uint32_t> half_neighbors;
  std::vector<std::uint32_t> full_offsets;
  std::vector<std::uint32_t> full_neighbors;

  std::size_t size() const { return snapshot.size(); }
  std::size_t pair_count() const { return half_neighbors.size(); }
  std::span<const std::uint32_t> upper(std::size_t i) const {
    return {half_neighbors.data() + half_offsets[i], half_neighbors.data() + half_offsets[i + 1]};
  }
  std::span<const std::uint32_t> adjacent(std::size_t i) const {
    return {full_neighbors.data() + full_offsets[i], full_neighbors.data() + full_offsets[i + 1]};
  }
  /// Sorted unordered pairs (i < j).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;
};

VerletList build_verlet(const CellGrid& grid, std::span<const Vec2> pos, Real r_list, Real skin);
/// Uses the cell grid when it has at least 3 cells per axis, brute force otherwise.
VerletList build_verlet(std::span<const Vec2> pos, const PeriodicBox& box, Real r_list, Real skin);
VerletList build_verlet_brute(std::span<const Vec2> pos, const PeriodicBox& box, Real r_list,
                              Real skin);

/// True iff some particle moved more than skin/2 (minimum image) since the snapshot.
bool verlet_needs_rebuild(const VerletList& list, std::span<const Vec2> pos,
                          const PeriodicBox& box);

/// Unordered pairs from the list whose snapshot separation is at most max_dist.
std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_within(const VerletList& list,
                                                                  const PeriodicBox& box,
                                                                  Real max_dist);

}  // namespace brownsim

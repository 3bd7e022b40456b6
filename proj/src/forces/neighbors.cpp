#include "brownsim/forces/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include "brownsim/core/parallel.hpp"

namespace brownsim {

std::size_t CellGrid::cell_coord(Real x) const {
  auto c = static_cast<std::size_t>(x / cell_edge);
  return c >= cells_per_axis ? cells_per_axis - 1 : c;
}

std::optional<CellGrid> build_cell_grid(std::span<const Vec2> pos, const PeriodicBox& box,
                                        Real min_edge) {
  const auto per_axis = static_cast<std::size_t>(std::floor(box.length() / min_edge));
  if (per_axis < 3) return std::nullopt;
  CellGrid g;
  g.box = box;
  g.cells_per_axis = per_axis;
  g.cell_edge = box.length() / Real(per_axis);
  const std::size_t n = pos.size();
  g.cell_of.resize(n);
  g.cell_start.assign(g.cell_count() + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g.cell_of[i] = static_cast<std::uint32_t>(g.cell_index(pos[i]));
    ++g.cell_start[g.cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < g.cell_count(); ++c) g.cell_start[c + 1] += g.cell_start[c];
  g.items.resize(n);
  std::vector<std::uint32_t> fill(g.cell_start.begin(), g.cell_start.end() - 1);
  for (std::size_t i = 0; i < n; ++i) g.items[fill[g.cell_of[i]]++] = static_cast<std::uint32_t>(i);
  return g;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> VerletList::pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(pair_count());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::uint32_t j : upper(i)) out.emplace_back(static_cast<std::uint32_t>(i), j);
  }
  return out;
}

namespace {

void finish(VerletList& vl, std::vector<std::vector<std::uint32_t>>& upper) {
  const std::size_t n = upper.size();
  vl.half_offsets.assign(n + 1, 0);
  std::vector<std::uint32_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(upper[i].begin(), upper[i].end());
    vl.half_offsets[i + 1] = vl.half_offsets[i] + static_cast<std::uint32_t>(upper[i].size());
    degree[i] += static_cast<std::uint32_t>(upper[i].size());
    for (std::uint32_t j : upper[i]) ++degree[j];
  }
  vl.half_neighbors.resize(vl.half_offsets[n]);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(upper[i].begin(), upper[i].end(), vl.half_neighbors.begin() + vl.half_offsets[i]);
  }
  vl.full_offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) vl.full_offsets[i + 1] = vl.full_offsets[i] + degree[i];
  vl.full_neighbors.resize(vl.full_offsets[n]);
  // Lower neighbours (j < i) arrive in ascending j order, then the sorted upper ones.
  std::vector<std::uint32_t> fill(vl.full_offsets.begin(), vl.full_offsets.end() - 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::uint32_t i : upper[j]) vl.full_neighbors[fill[i]++] = static_cast<std::uint32_t>(j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t j : upper[i]) vl.full_neighbors[fill[i]++] = j;
  }
}

}  // namespace

VerletList build_verlet(const CellGrid& grid, std::span<const Vec2> pos, Real r_list, Real skin) {
  const std::size_t n = pos.size();
  const PeriodicBox& box = grid.box;
  const Real r2max = r_list * r_list;
  const auto m = static_cast<std::int64_t>(grid.cells_per_axis);
  std::vector<std::vector<std::uint32_t>> upper(n);

#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 64)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto c = static_cast<std::int64_t>(grid.cell_of[i]);
    const std::int64_t cx = c % m;
    const std::int64_t cy = c / m;
    auto& mine = upper[i];
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        const std::int64_t nx = (cx + dx + m) % m;
        const std::int64_t ny = (cy + dy + m) % m;
        for (std::uint32_t j : grid.cell(static_cast<std::size_t>(ny * m + nx))) {
          if (j <= i) continue;
          if (norm2(box.min_image(pos[i], pos[j])) <= r2max) mine.push_back(j);
        }
      }
    }
  }
  VerletList vl;
  vl.r_list = r_list;
  vl.skin = skin;
  vl.snapshot.assign(pos.begin(), pos.end());
  finish(vl, upper);
  return vl;
}

VerletList build_verlet_brute(std::span<const Vec2> pos, const PeriodicBox& box, Real r_list,
                              Real skin) {
  const std::size_t n = pos.size();
  const Real r2max = r_list * r_list;
  std::vector<std::vector<std::uint32_t>> upper(n);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 64)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm2(box.min_image(pos[i], pos[j])) <= r2max) {
        upper[i].push_back(static_cast<std::uint32_t>(j));
      }
    }
  }
  VerletList vl;
  vl.r_list = r_list;
  vl.skin = skin;
  vl.snapshot.assign(pos.begin(), pos.end());
  finish(vl, upper);
  return vl;
}

VerletList build_verlet(std::span<const Vec2> pos, const PeriodicBox& box, Real r_list, Real skin) {
  if (auto grid = build_cell_grid(pos, box, r_list)) return build_verlet(*grid, pos, r_list, skin);
  return build_verlet_brute(pos, box, r_list, skin);
}

bool verlet_needs_rebuild(const VerletList& list, std::span<const Vec2> pos,
                          const PeriodicBox& box) {
  if (list.snapshot.size() != pos.size()) return true;
  const Real limit2 = (list.skin / 2) * (list.skin / 2);
  const auto n = static_cast<std::int64_t>(pos.size());
  int moved = 0;
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(| : moved)
  for (std::int64_t i = 0; i < n; ++i) {
    if (norm2(box.min_image(list.snapshot[i], pos[i])) > limit2) moved |= 1;
  }
  return moved != 0;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_within(const VerletList& list,
                                                                  const PeriodicBox& box,
                                                                  Real max_dist) {
  const Real d2 = max_dist * max_dist;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::uint32_t j : list.upper(i)) {
      if (norm2(box.min_image(list.snapshot[i], list.snapshot[j])) <= d2) {
        out.emplace_back(static_cast<std::uint32_t>(i), j);
      }
    }
  }
  return out;
}

}  // namespace brownsim

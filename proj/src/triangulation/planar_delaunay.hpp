#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "brownsim/core/vec2.hpp"

namespace brownsim::detail {

// Incremental Delaunay triangulation of a planar point set (Lawson insertion with a
// walking point location inside a large enclosing triangle). Input points must be
// pairwise distinct; exact cocircularity is resolved arbitrarily.
class PlanarDelaunay {
 public:
  struct Tri {
    std::array<std::int32_t, 3> v;
    std::array<std::int32_t, 3> n;  // neighbour across the edge opposite each slot
  };

  explicit PlanarDelaunay(std::span<const Vec2> points);

  /// Counter-clockwise triangles that use input points only.
  std::vector<std::array<std::int32_t, 3>> triangles() const;

 private:
  std::int32_t locate(Vec2 p, std::int32_t start);
  void insert(std::int32_t p, std::int32_t t);
  void split_triangle(std::int32_t p, std::int32_t t);
  void split_edge(std::int32_t p, std::int32_t t, int k);
  void legalize();
  void relink(std::int32_t nb, std::int32_t from, std::int32_t to);

  std::vector<Vec2> pts_;  // input points followed by three enclosing vertices
  std::size_t n_input_ = 0;
  std::vector<Tri> tris_;
  std::vector<std::int32_t> stack_;
  std::uint64_t walk_state_ = 0x9e3779b97f4a7c15ull;
};

/// Indices of points sorted along a Hilbert curve over their bounding box.
std::vector<std::uint32_t> hilbert_order(std::span<const Vec2> points);

}  // namespace brownsim::detail

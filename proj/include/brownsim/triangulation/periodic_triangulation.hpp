#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "brownsim/core/particles.hpp"
#include "brownsim/core/vec2.hpp"

namespace brownsim {

inline constexpr std::int32_t kNoTriangle = -1;

// Vertex slots are counter-clockwise. shift[k] is the image offset (in box lengths)
// applied on top of the vertex's lifted position, so the shifts stay valid when a
// particle wraps around the box.
struct Triangle {
  std::array<std::uint32_t, 3> v{};
  std::array<IVec2, 3> shift{};
  std::array<std::uint32_t, 3> edge{};  // edge opposite each slot
  std::array<std::uint8_t, 3> side{};   // which side of that edge this triangle is
};

// Side 0 triangle sees the edge as v[slot+1] -> v[slot+2]; side 1 sees it reversed.
struct Edge {
  std::array<std::int32_t, 2> tri{kNoTriangle, kNoTriangle};
  std::array<std::uint8_t, 2> slot{};  // slot of the opposite vertex in tri[s]
};

struct EdgeView {
  std::uint32_t a = 0, b = 0;
  std::int32_t t_left = kNoTriangle, t_right = kNoTriangle;
  std::int64_t opp_left = -1, opp_right = -1;
};

// The two triangles around an edge laid out relative to vertex a:
// t0 = (c, a, b), t1 = (d, b, a). d is meaningless when the edge is on a boundary.
struct Quad {
  std::uint32_t ia = 0, ib = 0, ic = 0, id = 0;
  Vec2 a, b, c, d;
  bool interior = false;
};

class PeriodicTriangulation {
 public:
  PeriodicTriangulation() = default;

  /// Builds edge records from triangles whose v and shift are filled in.
  /// Edges seen once become boundary edges (allowed for open patches).
  static PeriodicTriangulation from_triangles(std::size_t vertex_count, Real box_length,
                                              std::vector<Triangle> triangles);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  Real box_length() const { return box_length_; }
  bool closed() const;

  const Triangle& triangle(std::size_t t) const { return triangles_[t]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  std::span<const Triangle> triangles() const { return triangles_; }
  std::span<const Edge> edges() const { return edges_; }
  EdgeView edge_view(std::size_t e) const;
  std::pair<std::uint32_t, std::uint32_t> endpoints(std::size_t e) const;

  /// Vector from slot i to slot j of triangle t under the triangle's embedding.
  Vec2 rel(const LiftedPoints& pts, std::size_t t, int i, int j) const;
  Real signed_area2(const LiftedPoints& pts, std::size_t t) const;
  Vec2 edge_vector(const LiftedPoints& pts, std::size_t e) const;
  Quad quad(const LiftedPoints& pts, std::size_t e) const;

  /// Geometric validity: interior edge whose swapped diagonal gives two positive triangles.
  bool flippable(const LiftedPoints& pts, std::size_t e) const;
  /// Topological precondition only (interior edge between two distinct triangles).
  bool flippable_topology(std::size_t e) const;
  /// Swaps the diagonal. No geometric checks.
  void flip(std::size_t e);

  /// Unique unordered vertex pairs (i < j) joined by an edge, sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_pairs() const;

  void write_dump(std::ostream& out) const;

  // Fault injection for diagnostics tests.
  Triangle& mutable_triangle(std::size_t t) { return triangles_[t]; }
  Edge& mutable_edge(std::size_t e) { return edges_[e]; }

 private:
  std::size_t vertex_count_ = 0;
  Real box_length_ = 0;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
};

inline int next_slot(int k) { return k == 2 ? 0 : k + 1; }
inline int prev_slot(int k) { return k == 0 ? 2 : k - 1; }

}  // namespace brownsim

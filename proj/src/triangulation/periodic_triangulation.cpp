#include "brownsim/triangulation/periodic_triangulation.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <tuple>

#include "brownsim/core/errors.hpp"
#include "brownsim/triangulation/predicates.hpp"

namespace brownsim {

namespace {

struct HalfEdge {
  std::uint32_t lo, hi;
  IVec2 delta;  // shift(hi) - shift(lo)
  std::uint32_t tri;
  std::uint8_t slot;
  bool forward;  // lo -> hi in triangle order

  auto key() const { return std::tuple(lo, hi, delta.x, delta.y); }
};

void normalize_shifts(Triangle& t) {
  const IVec2 s0 = t.shift[0];
  for (auto& s : t.shift) s = s - s0;
}

}  // namespace

PeriodicTriangulation PeriodicTriangulation::from_triangles(std::size_t vertex_count,
                                                            Real box_length,
                                                            std::vector<Triangle> triangles) {
  PeriodicTriangulation out;
  out.vertex_count_ = vertex_count;
  out.box_length_ = box_length;

  std::vector<HalfEdge> halves;
  halves.reserve(triangles.size() * 3);
  for (std::uint32_t t = 0; t < triangles.size(); ++t) {
    Triangle& tri = triangles[t];
    for (auto v : tri.v) {
      if (v >= vertex_count) throw BuildError("triangle references vertex out of range");
    }
    normalize_shifts(tri);
    for (int k = 0; k < 3; ++k) {
      const int i = next_slot(k);
      const int j = prev_slot(k);
      std::uint32_t a = tri.v[i], b = tri.v[j];
      IVec2 delta = tri.shift[j] - tri.shift[i];
      bool forward = true;
      if (b < a || (a == b && std::pair(delta.x, delta.y) < std::pair(0, 0))) {
        std::swap(a, b);
        delta = IVec2{0, 0} - delta;
        forward = false;
      }
      if (a == b && delta == IVec2{0, 0}) throw BuildError("degenerate edge in triangle");
      halves.push_back({a, b, delta, t, static_cast<std::uint8_t>(k), forward});
    }
  }
  std::sort(halves.begin(), halves.end(), [](const HalfEdge& x, const HalfEdge& y) {
    return std::tuple(x.key(), x.tri, x.slot) < std::tuple(y.key(), y.tri, y.slot);
  });

  for (std::size_t i = 0; i < halves.size();) {
    std::size_t j = i + 1;
    while (j < halves.size() && halves[j].key() == halves[i].key()) ++j;
    if (j - i > 2) throw BuildError("non-manifold edge shared by more than two triangles");
    if (j - i == 2 && halves[i].forward == halves[i + 1].forward) {
      throw BuildError("inconsistent orientation across an edge");
    }
    const auto e = static_cast<std::uint32_t>(out.edges_.size());
    Edge edge;
    for (std::size_t s = 0; s < j - i; ++s) {
      const HalfEdge& h = halves[i + s];
      edge.tri[s] = static_cast<std::int32_t>(h.tri);
      edge.slot[s] = h.slot;
      triangles[h.tri].edge[h.slot] = e;
      triangles[h.tri].side[h.slot] = static_cast<std::uint8_t>(s);
    }
    out.edges_.push_back(edge);
    i = j;
  }
  out.triangles_ = std::move(triangles);
  return out;
}

bool PeriodicTriangulation::closed() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.tri[1] != kNoTriangle; });
}

std::pair<std::uint32_t, std::uint32_t> PeriodicTriangulation::endpoints(std::size_t e) const {
  const Edge& edge = edges_[e];
  const Triangle& t = triangles_[edge.tri[0]];
  return {t.v[next_slot(edge.slot[0])], t.v[prev_slot(edge.slot[0])]};
}

EdgeView PeriodicTriangulation::edge_view(std::size_t e) const {
  const Edge& edge = edges_[e];
  EdgeView view;
  std::tie(view.a, view.b) = endpoints(e);
  view.t_left = edge.tri[0];
  view.t_right = edge.tri[1];
  view.opp_left = triangles_[edge.tri[0]].v[edge.slot[0]];
  if (edge.tri[1] != kNoTriangle) view.opp_right = triangles_[edge.tri[1]].v[edge.slot[1]];
  return view;
}

Vec2 PeriodicTriangulation::rel(const LiftedPoints& pts, std::size_t t, int i, int j) const {
  const Triangle& tri = triangles_[t];
  const std::uint32_t vi = tri.v[i];
  const std::uint32_t vj = tri.v[j];
  const IVec2 k = (pts.image_of(vj) + tri.shift[j]) - (pts.image_of(vi) + tri.shift[i]);
  return (pts.pos[vj] - pts.pos[vi]) +
         Vec2{pts.length * static_cast<Real>(k.x), pts.length * static_cast<Real>(k.y)};
}

Real PeriodicTriangulation::signed_area2(const LiftedPoints& pts, std::size_t t) const {
  return cross(rel(pts, t, 0, 1), rel(pts, t, 0, 2));
}

Vec2 PeriodicTriangulation::edge_vector(const LiftedPoints& pts, std::size_t e) const {
  const Edge& edge = edges_[e];
  const int k = edge.slot[0];
  return rel(pts, edge.tri[0], next_slot(k), prev_slot(k));
}

Quad PeriodicTriangulation::quad(const LiftedPoints& pts, std::size_t e) const {
  const Edge& edge = edges_[e];
  Quad q;
  const std::size_t t0 = edge.tri[0];
  const int k0 = edge.slot[0];
  const Triangle& A = triangles_[t0];
  q.ic = A.v[k0];
  q.ia = A.v[next_slot(k0)];
  q.ib = A.v[prev_slot(k0)];
  q.a = Vec2{0, 0};
  q.b = rel(pts, t0, next_slot(k0), prev_slot(k0));
  q.c = rel(pts, t0, next_slot(k0), k0);
  if (edge.tri[1] != kNoTriangle) {
    const std::size_t t1 = edge.tri[1];
    const int k1 = edge.slot[1];
    q.id = triangles_[t1].v[k1];
    // In t1, a sits in slot k1+2.
    q.d = rel(pts, t1, prev_slot(k1), k1);
    q.interior = true;
  }
  return q;
}

bool PeriodicTriangulation::flippable_topology(std::size_t e) const {
  const Edge& edge = edges_[e];
  return edge.tri[1] != kNoTriangle && edge.tri[0] != edge.tri[1];
}

bool PeriodicTriangulation::flippable(const LiftedPoints& pts, std::size_t e) const {
  if (!flippable_topology(e)) return false;
  const Quad q = quad(pts, e);
  return orient(q.a, q.d, q.c) > 0 && orient(q.d, q.b, q.c) > 0;
}

void PeriodicTriangulation::flip(std::size_t e) {
  Edge& edge = edges_[e];
  const auto t0 = static_cast<std::size_t>(edge.tri[0]);
  const auto t1 = static_cast<std::size_t>(edge.tri[1]);
  const int k0 = edge.slot[0];
  const int k1 = edge.slot[1];
  const Triangle A = triangles_[t0];
  const Triangle B = triangles_[t1];

  const std::uint32_t c = A.v[k0];
  const std::uint32_t a = A.v[next_slot(k0)];
  const std::uint32_t b = A.v[prev_slot(k0)];
  const std::uint32_t d = B.v[k1];
  const IVec2 sc = A.shift[k0];
  const IVec2 sa = A.shift[next_slot(k0)];
  const IVec2 sb = A.shift[prev_slot(k0)];
  // Express d in the frame of t0 by matching the shared vertex a.
  const IVec2 sd = B.shift[k1] + (sa - B.shift[prev_slot(k1)]);

  const std::uint32_t e_bc = A.edge[next_slot(k0)];
  const std::uint8_t s_bc = A.side[next_slot(k0)];
  const std::uint32_t e_ca = A.edge[prev_slot(k0)];
  const std::uint8_t s_ca = A.side[prev_slot(k0)];
  const std::uint32_t e_ad = B.edge[next_slot(k1)];
  const std::uint8_t s_ad = B.side[next_slot(k1)];
  const std::uint32_t e_db = B.edge[prev_slot(k1)];
  const std::uint8_t s_db = B.side[prev_slot(k1)];
  const auto ue = static_cast<std::uint32_t>(e);

  Triangle& T0 = triangles_[t0];
  T0.v = {a, d, c};
  T0.shift = {sa, sd, sc};
  T0.edge = {ue, e_ca, e_ad};
  T0.side = {0, s_ca, s_ad};
  normalize_shifts(T0);

  Triangle& T1 = triangles_[t1];
  T1.v = {d, b, c};
  T1.shift = {sd, sb, sc};
  T1.edge = {e_bc, ue, e_db};
  T1.side = {s_bc, 1, s_db};
  normalize_shifts(T1);

  edge.slot = {0, 1};
  edges_[e_ca].tri[s_ca] = static_cast<std::int32_t>(t0);
  edges_[e_ca].slot[s_ca] = 1;
  edges_[e_ad].tri[s_ad] = static_cast<std::int32_t>(t0);
  edges_[e_ad].slot[s_ad] = 2;
  edges_[e_bc].tri[s_bc] = static_cast<std::int32_t>(t1);
  edges_[e_bc].slot[s_bc] = 0;
  edges_[e_db].tri[s_db] = static_cast<std::int32_t>(t1);
  edges_[e_db].slot[s_db] = 2;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> PeriodicTriangulation::edge_pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [a, b] = endpoints(e);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    pairs.emplace_back(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

void PeriodicTriangulation::write_dump(std::ostream& out) const {
  out << "# brownsim-triangulation V=" << vertex_count_ << " E=" << edges_.size()
      << " F=" << triangles_.size() << '\n';
  for (const Triangle& t : triangles_) {
    out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const EdgeView v = edge_view(e);
    out << v.a << ' ' << v.b << ' ' << v.t_left << ' ' << v.t_right << '\n';
  }
}

}  // namespace brownsim

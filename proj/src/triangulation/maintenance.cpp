#include "brownsim/triangulation/maintenance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"
#include "brownsim/triangulation/predicates.hpp"

namespace brownsim {

namespace {

bool delaunay_violation(const PeriodicTriangulation& tri, const LiftedPoints& pts,
                        std::size_t e, Real tol) {
  if (!tri.flippable_topology(e)) return false;
  const Quad q = tri.quad(pts, e);
  return incircle(q.c, q.a, q.b, q.d, tol);
}

bool inversion_flagged(const PeriodicTriangulation& tri, const LiftedPoints& pts,
                       std::size_t e) {
  if (!tri.flippable_topology(e)) return false;
  const Quad q = tri.quad(pts, e);
  return inversion_flip_needed(q.a, q.b, q.c, q.d);
}

template <class Pred>
std::vector<std::uint32_t> flag_edges(const PeriodicTriangulation& tri, Pred pred) {
  const auto m = static_cast<std::int64_t>(tri.edge_count());
  std::vector<std::uint8_t> flag(tri.edge_count(), 0);
#pragma omp parallel for num_threads(thread_count()) schedule(static)
  for (std::int64_t e = 0; e < m; ++e) flag[e] = pred(static_cast<std::size_t>(e)) ? 1 : 0;
  std::vector<std::uint32_t> out;
  for (std::int64_t e = 0; e < m; ++e) {
    if (flag[e]) out.push_back(static_cast<std::uint32_t>(e));
  }
  return out;
}

void flip_all(PeriodicTriangulation& tri, const std::vector<std::uint32_t>& chosen) {
  const auto m = static_cast<std::int64_t>(chosen.size());
#pragma omp parallel for num_threads(thread_count()) schedule(static)
  for (std::int64_t i = 0; i < m; ++i) tri.flip(chosen[i]);
}

}  // namespace

bool detect_edge_inversion(const PeriodicTriangulation& tri, const LiftedPoints& prev,
                           const LiftedPoints& curr) {
  const auto m = static_cast<std::int64_t>(tri.edge_count());
  int found = 0;
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(| : found)
  for (std::int64_t e = 0; e < m; ++e) {
    const Vec2 r0 = tri.edge_vector(prev, static_cast<std::size_t>(e));
    const Vec2 r1 = tri.edge_vector(curr, static_cast<std::size_t>(e));
    if (dot(r0, r1) < 0) found |= 1;
  }
  return found != 0;
}

std::vector<FlipDecision> detect_inverted_triangles(const PeriodicTriangulation& tri,
                                                    const LiftedPoints& pts) {
  std::vector<FlipDecision> out;
  for (std::uint32_t e :
       flag_edges(tri, [&](std::size_t e) { return inversion_flagged(tri, pts, e); })) {
    out.push_back({e, FlipReason::kInvertedTriangle});
  }
  return out;
}

std::size_t count_nonpositive(const PeriodicTriangulation& tri, const LiftedPoints& pts) {
  const auto f = static_cast<std::int64_t>(tri.triangle_count());
  std::size_t count = 0;
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(+ : count)
  for (std::int64_t t = 0; t < f; ++t) {
    if (!(tri.signed_area2(pts, static_cast<std::size_t>(t)) > 0)) ++count;
  }
  return count;
}

void flip_edge(PeriodicTriangulation& tri, std::size_t e) {
  if (e >= tri.edge_count() || !tri.flippable_topology(e)) {
    throw std::logic_error("flip requested on a non-flippable edge " + std::to_string(e));
  }
  tri.flip(e);
}

std::vector<std::uint32_t> select_conflict_free(const PeriodicTriangulation& tri,
                                                std::vector<std::uint32_t> flagged) {
  std::sort(flagged.begin(), flagged.end());
  std::vector<std::uint8_t> taken(tri.triangle_count(), 0);
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t e : flagged) {
    const Edge& edge = tri.edge(e);
    const auto t0 = static_cast<std::size_t>(edge.tri[0]);
    const auto t1 = static_cast<std::size_t>(edge.tri[1]);
    if (taken[t0] || taken[t1]) continue;
    taken[t0] = taken[t1] = 1;
    chosen.push_back(e);
  }
  return chosen;
}

std::size_t restore_delaunay(PeriodicTriangulation& tri, const LiftedPoints& pts, Real tol,
                             std::size_t max_passes, std::size_t* flips) {
  std::size_t passes = 0;
  for (;;) {
    auto flagged = flag_edges(tri, [&](std::size_t e) {
      return delaunay_violation(tri, pts, e, tol) && tri.flippable(pts, e);
    });
    if (flagged.empty()) return passes;
    if (passes >= max_passes) {
      std::ostringstream msg;
      msg << "Delaunay restoration did not converge after " << passes << " passes; "
          << flagged.size() << " edges still violate the in-circle test (first edge "
          << flagged.front() << ")";
      throw NonConvergenceError(msg.str());
    }
    const auto chosen = select_conflict_free(tri, std::move(flagged));
    flip_all(tri, chosen);
    if (flips) *flips += chosen.size();
    ++passes;
  }
}

std::vector<std::uint32_t> crossed_edges(const PeriodicTriangulation& tri, const LiftedPoints& prev,
                                         const LiftedPoints& curr) {
  std::vector<std::uint32_t> out;
  for (std::size_t t = 0; t < tri.triangle_count(); ++t) {
    if (tri.signed_area2(curr, t) > 0) continue;
    const Vec2 u0 = tri.rel(prev, t, 0, 1), v0 = tri.rel(prev, t, 0, 2);
    const Vec2 du = tri.rel(curr, t, 0, 1) - u0, dv = tri.rel(curr, t, 0, 2) - v0;
    const auto area = [&](Real s) { return cross(u0 + du * s, v0 + dv * s); };
    if (!(area(0) > 0)) continue;
    Real lo = 0, hi = 1;
    for (int k = 0; k < 60; ++k) {
      const Real mid = (lo + hi) / 2;
      (area(mid) > 0 ? lo : hi) = mid;
    }
    const Vec2 p1 = u0 + du * hi, p2 = v0 + dv * hi;
    // At the crossing the three corners are collinear; the longest side is the edge the
    // middle corner went through.
    const Real side[3] = {norm2(p2 - p1), norm2(p2), norm2(p1)};
    const int slot = static_cast<int>(std::max_element(side, side + 3) - side);
    const std::uint32_t e = tri.triangle(t).edge[slot];
    if (tri.flippable_topology(e)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RepairResult repair_inversions(PeriodicTriangulation& tri, const LiftedPoints& pts,
                               std::size_t max_passes, const LiftedPoints* prev) {
  RepairResult result;
  for (;;) {
    if (count_nonpositive(tri, pts) == 0) return result;
    if (result.passes >= max_passes) break;
    std::vector<std::uint32_t> flagged;
    for (const FlipDecision& d : detect_inverted_triangles(tri, pts)) flagged.push_back(d.edge);
    if (flagged.empty() && prev) flagged = crossed_edges(tri, *prev, pts);
    if (flagged.empty()) break;
    const auto chosen = select_conflict_free(tri, std::move(flagged));
    flip_all(tri, chosen);
    result.flips += chosen.size();
    ++result.passes;
  }
  result.needs_rollback = true;
  return result;
}

std::string AuditReport::summary() const {
  std::ostringstream out;
  out << "V=" << vertices << " E=" << edges << " F=" << triangles
      << " nonpositive=" << nonpositive_triangles << " incircle=" << incircle_violations
      << " link_errors=" << link_errors << " max_circumdiameter=" << max_circumdiameter;
  for (const auto& p : problems) out << "\n  " << p;
  return out.str();
}

AuditReport audit(const PeriodicTriangulation& tri, const LiftedPoints& pts, Real tol) {
  AuditReport r;
  r.vertices = tri.vertex_count();
  r.edges = tri.edge_count();
  r.triangles = tri.triangle_count();
  r.closed = tri.closed();
  r.euler_ok = r.edges == 3 * r.vertices && r.triangles == 2 * r.vertices;
  if (!r.euler_ok) r.problems.push_back("Euler counts violate E = 3V, F = 2V");
  if (!r.closed) r.problems.push_back("triangulation has boundary edges");

  const auto& tris = tri.triangles();
  const auto& edges = tri.edges();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t e = tris[t].edge[k];
      const std::uint8_t s = tris[t].side[k];
      if (e >= edges.size() || s > 1 || edges[e].tri[s] != static_cast<std::int32_t>(t) ||
          edges[e].slot[s] != k) {
        ++r.link_errors;
      }
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    bool good = true;
    for (int s = 0; s < 2 && good; ++s) {
      const std::int32_t t = edge.tri[s];
      if (t == kNoTriangle) {
        good = s == 1;
        continue;
      }
      if (t < 0 || static_cast<std::size_t>(t) >= tris.size() || edge.slot[s] > 2 ||
          tris[t].edge[edge.slot[s]] != e || tris[t].side[edge.slot[s]] != s) {
        good = false;
      }
    }
    if (good && edge.tri[1] != kNoTriangle) {
      const Triangle& A = tris[edge.tri[0]];
      const Triangle& B = tris[edge.tri[1]];
      const int k0 = edge.slot[0];
      const int k1 = edge.slot[1];
      const bool same_ends = A.v[next_slot(k0)] == B.v[prev_slot(k1)] &&
                             A.v[prev_slot(k0)] == B.v[next_slot(k1)];
      const bool same_frame = A.shift[next_slot(k0)] - B.shift[prev_slot(k1)] ==
                              A.shift[prev_slot(k0)] - B.shift[next_slot(k1)];
      good = same_ends && same_frame;
    }
    if (!good) ++r.link_errors;
  }
  if (r.link_errors > 0) {
    r.problems.push_back(std::to_string(r.link_errors) + " inconsistent edge/triangle links");
    return r;  // geometry below relies on valid links
  }

  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Vec2 ab = tri.rel(pts, t, 0, 1);
    const Vec2 ac = tri.rel(pts, t, 0, 2);
    const Real area2 = cross(ab, ac);
    r.total_area += area2 / 2;
    if (!(area2 > 0)) ++r.nonpositive_triangles;
    r.max_circumdiameter = std::max(r.max_circumdiameter, circumdiameter(ab, ac));
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (delaunay_violation(tri, pts, e, tol)) ++r.incircle_violations;
  }
  const Real L = pts.length;
  r.expected_area = L * L;
  r.circumdiameter_below_half_box = r.max_circumdiameter < L / 2;

  if (r.nonpositive_triangles > 0) {
    r.problems.push_back(std::to_string(r.nonpositive_triangles) +
                         " triangles with non-positive area");
  }
  if (r.incircle_violations > 0) {
    r.problems.push_back(std::to_string(r.incircle_violations) + " edges violate the in-circle test");
  }
  if (r.closed && std::abs(r.total_area - r.expected_area) > std::sqrt(std::numeric_limits<Real>::epsilon()) * r.expected_area) {
    r.problems.push_back("triangle areas do not sum to the box area");
  }
  if (r.closed && !(r.max_circumdiameter < L)) {
    r.problems.push_back(
        "circumdiameter reaches the box length; the system is too sparse for a periodic "
        "triangulation (increase the particle count or the density)");
  }
  return r;
}

}  // namespace brownsim

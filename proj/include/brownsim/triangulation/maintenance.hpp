#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "brownsim/core/particles.hpp"
#include "brownsim/triangulation/periodic_triangulation.hpp"

namespace brownsim {

enum class FlipReason : std::uint8_t { kDelaunayViolation, kInvertedTriangle };

struct FlipDecision {
  std::uint32_t edge = 0;
  FlipReason reason = FlipReason::kDelaunayViolation;
};

/// True iff some edge vector reverses direction between prev and curr (r0 . r1 < 0).
bool detect_edge_inversion(const PeriodicTriangulation& tri, const LiftedPoints& prev,
                           const LiftedPoints& curr);

/// Edges (v1, v2) whose opposite vertex v4 lies inside (v1, v2, v3) or v3 inside
/// (v1, v2, v4), closed test. Ascending edge order.
std::vector<FlipDecision> detect_inverted_triangles(const PeriodicTriangulation& tri,
                                                    const LiftedPoints& pts);

/// Number of triangles with non-positive signed area.
std::size_t count_nonpositive(const PeriodicTriangulation& tri, const LiftedPoints& pts);

/// Flips edge e; throws std::logic_error when the edge has no two distinct triangles.
void flip_edge(PeriodicTriangulation& tri, std::size_t e);

/// Greedy conflict-free subset of the flagged edges in ascending order: no two chosen
/// edges share a triangle.
std::vector<std::uint32_t> select_conflict_free(const PeriodicTriangulation& tri,
                                                std::vector<std::uint32_t> flagged);

/// Lawson flip passes until no edge violates the in-circle test. Returns the number of
/// passes that flipped something. Throws NonConvergenceError past max_passes.
std::size_t restore_delaunay(PeriodicTriangulation& tri, const LiftedPoints& pts,
                             Real tol = 1e-12, std::size_t max_passes = 1000,
                             std::size_t* flips = nullptr);

struct RepairResult {
  bool needs_rollback = false;
  std::size_t flips = 0;
  std::size_t passes = 0;
};

/// Edges crossed by a corner of each inverted triangle, found by moving the corners
/// linearly from prev to curr until they become collinear. Triangles already
/// non-positive at prev are skipped. Ascending edge order.
std::vector<std::uint32_t> crossed_edges(const PeriodicTriangulation& tri, const LiftedPoints& prev,
                                         const LiftedPoints& curr);

/// Flips inverted-triangle edges in conflict-free passes until every triangle has
/// positive area. When the predicate flags nothing and prev is given, the crossed
/// edges are flipped instead (a vertex that went through two edges). Signals
/// needs_rollback when a pass makes no progress or max_passes is reached with
/// inversions left.
RepairResult repair_inversions(PeriodicTriangulation& tri, const LiftedPoints& pts,
                               std::size_t max_passes = 10, const LiftedPoints* prev = nullptr);

struct AuditReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  bool euler_ok = false;  // E = 3V and F = 2V
  bool closed = false;
  std::size_t link_errors = 0;
  std::size_t nonpositive_triangles = 0;
  std::size_t incircle_violations = 0;
  Real total_area = 0;
  Real expected_area = 0;
  Real max_circumdiameter = 0;
  bool circumdiameter_below_half_box = false;
  std::vector<std::string> problems;

  /// Euler counts, links, areas, in-circle, area sum, and circumdiameters below L.
  bool ok() const { return problems.empty(); }
  std::string summary() const;
};

AuditReport audit(const PeriodicTriangulation& tri, const LiftedPoints& pts, Real tol = 1e-12);

}  // namespace brownsim

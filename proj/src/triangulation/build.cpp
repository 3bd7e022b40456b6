#include "brownsim/triangulation/build.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/rng.hpp"
#include "brownsim/triangulation/maintenance.hpp"
#include "brownsim/triangulation/predicates.hpp"
#include "planar_delaunay.hpp"

namespace brownsim {

namespace {

struct Copy {
  std::uint32_t original;
  IVec2 offset;
};

void check_input(const LiftedPoints& pts) {
  const std::size_t n = pts.size();
  if (n < 3) throw BuildError("triangulation needs at least 3 points");
  std::vector<Vec2> sorted(pts.pos.begin(), pts.pos.end());
  std::sort(sorted.begin(), sorted.end(),
            [](Vec2 a, Vec2 b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted[i] == sorted[i - 1]) throw BuildError("coincident input points");
  }
  // Collinear on the torus means collinear in the plane for the wrapped coordinates of
  // a short enough point set; reject the planar case explicitly.
  const Vec2 p0 = pts.pos[0];
  std::size_t far = 1;
  for (std::size_t i = 2; i < n; ++i) {
    if (norm2(pts.pos[i] - p0) > norm2(pts.pos[far] - p0)) far = i;
  }
  const Vec2 dir = pts.pos[far] - p0;
  bool collinear = true;
  for (std::size_t i = 1; i < n && collinear; ++i) {
    if (cross(dir, pts.pos[i] - p0) != 0) collinear = false;
  }
  if (collinear) throw BuildError("all input points are collinear");
}

// Returns an empty triangulation when the margin is too small.
std::optional<PeriodicTriangulation> try_build(const LiftedPoints& pts, Real margin,
                                               std::span<const Vec2> jitter) {
  const Real L = pts.length;
  const std::size_t n = pts.size();
  std::vector<Vec2> planar;
  std::vector<Copy> copies;
  planar.reserve(n * 2);
  for (std::int32_t cy = -1; cy <= 1; ++cy) {
    for (std::int32_t cx = -1; cx <= 1; ++cx) {
      for (std::uint32_t i = 0; i < n; ++i) {
        const Vec2 q = pts.pos[i] + jitter[i] + Vec2{L * Real(cx), L * Real(cy)};
        const bool central = cx == 0 && cy == 0;
        if (!central && (q.x < -margin || q.x >= L + margin || q.y < -margin ||
                         q.y >= L + margin)) {
          continue;
        }
        planar.push_back(q);
        copies.push_back({i, IVec2{cx, cy}});
      }
    }
  }

  const detail::PlanarDelaunay dt(planar);
  std::vector<Triangle> selected;
  selected.reserve(2 * n);
  for (const auto& t : dt.triangles()) {
    int anchor = 0;
    for (int k = 1; k < 3; ++k) {
      const Copy& ck = copies[t[k]];
      const Copy& ca = copies[t[anchor]];
      if (std::tie(ck.original, ck.offset) < std::tie(ca.original, ca.offset)) anchor = k;
    }
    if (!(copies[t[anchor]].offset == IVec2{0, 0})) continue;
    const Real diameter = circumdiameter(planar[t[1]] - planar[t[0]], planar[t[2]] - planar[t[0]]);
    if (!(diameter < margin)) return std::nullopt;
    Triangle tri;
    for (int k = 0; k < 3; ++k) {
      const Copy& c = copies[t[k]];
      tri.v[k] = c.original;
      tri.shift[k] = c.offset - pts.image_of(c.original);
    }
    selected.push_back(tri);
  }
  if (selected.size() != 2 * n) return std::nullopt;
  try {
    auto tri = PeriodicTriangulation::from_triangles(n, L, std::move(selected));
    if (!tri.closed() || tri.edge_count() != 3 * n) return std::nullopt;
    return tri;
  } catch (const BuildError&) {
    return std::nullopt;
  }
}

}  // namespace

PeriodicTriangulation build_initial(const LiftedPoints& pts, const BuildOptions& options) {
  check_input(pts);
  const std::size_t n = pts.size();
  const Real L = pts.length;
  const Real spacing = L / std::sqrt(Real(n));

  // Tiny deterministic jitter breaks exact cocircularity (lattices) in the planar
  // construction; the result is then checked against the true positions.
  std::vector<Vec2> jitter(n);
  const Real eta = Real(1e-9) * spacing;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(options.perturbation_seed, stream_id(StreamPurpose::kBuildPerturbation, i));
    const Real angle = Real(2 * std::numbers::pi * rng.uniform());
    jitter[i] = Vec2{std::cos(angle), std::sin(angle)} * eta;
  }

  Real margin = std::min(L, 6 * spacing);
  for (;;) {
    if (auto tri = try_build(pts, margin, jitter)) {
      for (std::size_t t = 0; t < tri->triangle_count(); ++t) {
        if (!(tri->signed_area2(pts, t) > 0)) {
          throw BuildError("degenerate triangle in the initial triangulation");
        }
      }
      restore_delaunay(*tri, pts, options.incircle_tol);
      return std::move(*tri);
    }
    if (margin >= L) break;
    margin = std::min(L, 2 * margin);
  }
  std::ostringstream msg;
  msg << "cannot build a periodic triangulation of " << n << " points in a box of length " << L
      << "; increase the particle count or the density";
  throw BuildError(msg.str());
}

PeriodicTriangulation build_initial(std::span<const Vec2> positions, const PeriodicBox& box,
                                    const BuildOptions& options) {
  return build_initial(LiftedPoints{positions, {}, box.length()}, options);
}

}  // namespace brownsim

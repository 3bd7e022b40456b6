#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/rng.hpp"
#include "brownsim/init/init.hpp"
#include "brownsim/triangulation/build.hpp"
#include "brownsim/triangulation/maintenance.hpp"
#include "brownsim/triangulation/predicates.hpp"

using namespace brownsim;

namespace {

constexpr Real kPatchBox = 1000;

Triangle tri_of(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Triangle t;
  t.v = {a, b, c};
  return t;
}

PeriodicTriangulation patch(std::size_t n, std::vector<Triangle> ts) {
  return PeriodicTriangulation::from_triangles(n, kPatchBox, std::move(ts));
}

LiftedPoints plane(const std::vector<Vec2>& p) { return {p, {}, kPatchBox}; }

std::int64_t find_edge(const PeriodicTriangulation& tri, std::uint32_t a, std::uint32_t b) {
  for (std::size_t e = 0; e < tri.edge_count(); ++e) {
    const auto [x, y] = tri.endpoints(e);
    if ((x == a && y == b) || (x == b && y == a)) return static_cast<std::int64_t>(e);
  }
  return -1;
}

// Orientation-sign oracle: p strictly inside or on the boundary of (a, b, c), any winding.
bool orientation_oracle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  const Real d1 = orient(a, b, p), d2 = orient(b, c, p), d3 = orient(c, a, p);
  if (orient(a, b, c) == 0) return false;
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

// Signed area from scratch: lifted positions plus the per-slot shifts.
Real oracle_area2(const PeriodicTriangulation& tri, const LiftedPoints& pts, std::size_t t) {
  const Triangle& T = tri.triangle(t);
  Vec2 p[3];
  for (int k = 0; k < 3; ++k) {
    const IVec2 img = pts.image_of(T.v[k]) + T.shift[k];
    p[k] = {pts.pos[T.v[k]].x + pts.length * img.x, pts.pos[T.v[k]].y + pts.length * img.y};
  }
  return (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[1].y - p[0].y) * (p[2].x - p[0].x);
}

struct Cloud {
  PeriodicBox box{1};
  std::vector<Vec2> pos;
  std::vector<IVec2> image;
  LiftedPoints view() const { return {pos, image, box.length()}; }
};

Cloud random_cloud(std::size_t n, Real L, std::uint64_t seed) {
  Cloud c;
  c.box = PeriodicBox(L);
  RngStream rng(seed, stream_id(StreamPurpose::kTest, 7));
  for (std::size_t i = 0; i < n; ++i) c.pos.push_back({Real(rng.uniform() * L), Real(rng.uniform() * L)});
  c.image.assign(n, IVec2{});
  return c;
}

Cloud lattice_cloud(Real L) {
  Cloud c;
  c.box = PeriodicBox(L);
  c.pos = triangular_lattice(c.box, 1, 1);
  c.image.assign(c.pos.size(), IVec2{});
  return c;
}

void perturb(Cloud& c, Real amplitude, std::uint64_t seed) {
  RngStream rng(seed, stream_id(StreamPurpose::kTest, 8));
  for (std::size_t i = 0; i < c.pos.size(); ++i) {
    const Vec2 d{Real((rng.uniform() * 2 - 1) * amplitude), Real((rng.uniform() * 2 - 1) * amplitude)};
    c.pos[i] = c.box.wrap(c.pos[i] + d, c.image[i]);
  }
}

using EdgeKey = std::tuple<std::uint32_t, std::uint32_t, long long, long long>;

EdgeKey key_of(std::uint32_t i, std::uint32_t j, Vec2 d) {
  return {i, j, std::llround(d.x * 1e6), std::llround(d.y * 1e6)};
}

// Edges of a periodic triangulation as directed (i, j, displacement) keys, both directions.
std::set<EdgeKey> edge_keys(const PeriodicTriangulation& tri, const LiftedPoints& pts) {
  std::set<EdgeKey> keys;
  for (std::size_t e = 0; e < tri.edge_count(); ++e) {
    const auto [a, b] = tri.endpoints(e);
    const Vec2 d = tri.edge_vector(pts, e);
    keys.insert(key_of(a, b, d));
    keys.insert(key_of(b, a, -d));
  }
  return keys;
}

// Brute-force periodic Delaunay edges: every triangle of (possibly shifted) points whose
// open circumdisk holds no image of any point. O(N^4) over a 3x3 replication.
std::set<EdgeKey> oracle_delaunay_edges(const Cloud& c) {
  const Real L = c.box.length();
  struct P {
    std::uint32_t id;
    Vec2 p;
  };
  std::vector<P> all;
  for (std::uint32_t i = 0; i < c.pos.size(); ++i) {
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sy = -1; sy <= 1; ++sy) all.push_back({i, {c.pos[i].x + sx * L, c.pos[i].y + sy * L}});
    }
  }
  std::set<EdgeKey> keys;
  for (std::uint32_t i = 0; i < c.pos.size(); ++i) {
    const Vec2 a = c.pos[i];
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (norm(all[j].p - a) > L / 2 || (all[j].p == a)) continue;
      for (std::size_t k = j + 1; k < all.size(); ++k) {
        if (norm(all[k].p - a) > L / 2 || (all[k].p == a)) continue;
        Vec2 b = all[j].p, d = all[k].p;
        const Real o = orient(a, b, d);
        if (o == 0) continue;
        if (o < 0) std::swap(b, d);
        bool empty = true;
        for (const P& q : all) {
          if (q.p == a || q.p == b || q.p == d) continue;
          if (incircle(a, b, d, q.p, 1e-9)) {
            empty = false;
            break;
          }
        }
        if (!empty) continue;
        keys.insert(key_of(i, all[j].id, all[j].p - a));
        keys.insert(key_of(all[j].id, i, a - all[j].p));
        keys.insert(key_of(i, all[k].id, all[k].p - a));
        keys.insert(key_of(all[k].id, i, a - all[k].p));
      }
    }
  }
  return keys;
}

}  // namespace

TEST_CASE("incircle examples") {
  CHECK_FALSE(incircle({0, 0}, {1, 0}, {0, 1}, {1, 1}, 1e-12));
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {0.9, 0.9}, 1e-12));
  CHECK_FALSE(incircle({0, 0}, {1, 0}, {0, 1}, {5, 5}, 1e-12));
  // Circumcenter (0.5, 0.5), radius sqrt(0.5): points just inside and outside.
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5 + 0.70}, 1e-12));
  CHECK_FALSE(incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5 + 0.71}, 1e-12));
}

TEST_CASE("incircle is translation and scale invariant") {
  RngStream rng(4, 0);
  for (int k = 0; k < 2000; ++k) {
    const Vec2 a{Real(rng.uniform()), Real(rng.uniform())};
    Vec2 b{Real(rng.uniform()), Real(rng.uniform())};
    Vec2 c{Real(rng.uniform()), Real(rng.uniform())};
    const Vec2 d{Real(rng.uniform()), Real(rng.uniform())};
    if (orient(a, b, c) < 0) std::swap(b, c);
    // Oracle: compare distance to the circumcenter with the radius.
    const Real ax = a.x, ay = a.y, bx = b.x, by = b.y, cx = c.x, cy = c.y;
    const Real den = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (std::abs(den) < 1e-3) continue;
    const Real ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
                     (cx * cx + cy * cy) * (ay - by)) / den;
    const Real uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
                     (cx * cx + cy * cy) * (bx - ax)) / den;
    const Real r = std::hypot(ax - ux, ay - uy);
    const Real dist = std::hypot(d.x - ux, d.y - uy);
    if (std::abs(dist - r) < 1e-6) continue;
    const bool inside = dist < r;
    REQUIRE(incircle(a, b, c, d, 1e-12) == inside);
    const Vec2 off{123.5, -77.25};
    REQUIRE(incircle(a * 8 + off, b * 8 + off, c * 8 + off, d * 8 + off, 1e-12) == inside);
  }
}

TEST_CASE("inverted-triangle predicate") {
  const Vec2 v1{0, 0}, v2{4, 0}, v3{2, 3};
  CHECK(inversion_flip_needed(v1, v2, v3, {2, 1}));
  CHECK(orientation_oracle(v1, v2, v3, {2, 1}));
  CHECK_FALSE(inversion_flip_needed(v1, v2, v3, {2, -1}));
  CHECK(inversion_flip_needed(v1, v2, v3, {2, 0}));
  // Either winding of the containing triangle.
  CHECK(point_in_triangle(v2, v1, v3, {2, 1}));
  CHECK_FALSE(point_in_triangle({0, 0}, {1, 1}, {2, 2}, {1, 1}));

  RngStream rng(9, 0);
  for (int k = 0; k < 100000; ++k) {
    Vec2 p[4];
    for (auto& q : p) q = {Real(rng.uniform() * 4 - 2), Real(rng.uniform() * 4 - 2)};
    const bool expect = orientation_oracle(p[0], p[1], p[2], p[3]) || orientation_oracle(p[0], p[1], p[3], p[2]);
    REQUIRE(inversion_flip_needed(p[0], p[1], p[2], p[3]) == expect);
  }
}

TEST_CASE("flip on a unit square and involution") {
  const std::vector<Vec2> p{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto tri = patch(4, {tri_of(0, 1, 2), tri_of(0, 2, 3)});
  const auto before = tri.edge_pairs();
  const auto e = find_edge(tri, 0, 2);
  REQUIRE(e >= 0);
  const auto counts = std::make_tuple(tri.vertex_count(), tri.edge_count(), tri.triangle_count());
  flip_edge(tri, static_cast<std::size_t>(e));
  CHECK(find_edge(tri, 0, 2) == -1);
  CHECK(find_edge(tri, 1, 3) == e);
  CHECK(std::make_tuple(tri.vertex_count(), tri.edge_count(), tri.triangle_count()) == counts);
  CHECK(count_nonpositive(tri, plane(p)) == 0);
  CHECK(audit(tri, plane(p)).link_errors == 0);
  flip_edge(tri, static_cast<std::size_t>(e));
  CHECK(tri.edge_pairs() == before);
  CHECK(count_nonpositive(tri, plane(p)) == 0);

  const auto boundary = find_edge(tri, 0, 1);
  CHECK_THROWS_AS(flip_edge(tri, static_cast<std::size_t>(boundary)), std::logic_error);
}

TEST_CASE("single inverted triangle is repaired by one flip") {
  std::vector<Vec2> p{{0, 0}, {4, 0}, {2, 3}, {2, -1}};
  auto tri = patch(4, {tri_of(0, 1, 2), tri_of(1, 0, 3)});
  CHECK(count_nonpositive(tri, plane(p)) == 0);
  CHECK(detect_inverted_triangles(tri, plane(p)).empty());

  p[3] = {2, 1};
  const auto flagged = detect_inverted_triangles(tri, plane(p));
  REQUIRE(flagged.size() == 1);
  CHECK(flagged[0].edge == find_edge(tri, 0, 1));
  CHECK(flagged[0].reason == FlipReason::kInvertedTriangle);
  const auto r = repair_inversions(tri, plane(p));
  CHECK_FALSE(r.needs_rollback);
  CHECK(r.flips == 1);
  CHECK(r.passes == 1);
  CHECK(find_edge(tri, 2, 3) >= 0);
  for (std::size_t t = 0; t < tri.triangle_count(); ++t) CHECK(oracle_area2(tri, plane(p), t) > 0);

  auto clean = patch(4, {tri_of(0, 1, 2), tri_of(1, 0, 3)});
  std::vector<Vec2> q{{0, 0}, {4, 0}, {2, 3}, {2, -1}};
  const auto none = repair_inversions(clean, plane(q));
  CHECK(none.flips == 0);
  CHECK_FALSE(none.needs_rollback);
}

TEST_CASE("double crossing needs two flips") {
  // Fan around e: f moves across (b, e) and then (c, e) into triangle (e, c, d).
  enum : std::uint32_t { e, f, b, c, d };
  auto at = [](double deg, double r) {
    const double a = deg * std::numbers::pi / 180;
    return Vec2{Real(r * std::cos(a)), Real(r * std::sin(a))};
  };
  std::vector<Vec2> p{{0, 0}, at(-30, 1), at(40, 1), at(100, 0.4), at(150, 1)};
  const std::vector<Triangle> ts{tri_of(e, f, b), tri_of(e, b, c), tri_of(e, c, d)};
  CHECK(count_nonpositive(patch(5, ts), plane(p)) == 0);
  const std::vector<Vec2> before = p;
  p[f] = {-0.3, 0.2};
  CHECK(orient(p[e], p[b], p[f]) > 0);
  CHECK(orient(p[e], p[c], p[f]) > 0);

  // The geometric fix: flip (b, e) to (c, f), then (c, e) to (d, f).
  auto manual = patch(5, ts);
  flip_edge(manual, static_cast<std::size_t>(find_edge(manual, b, e)));
  CHECK(find_edge(manual, c, f) >= 0);
  CHECK(count_nonpositive(manual, plane(p)) > 0);
  flip_edge(manual, static_cast<std::size_t>(find_edge(manual, c, e)));
  CHECK(find_edge(manual, d, f) >= 0);
  CHECK(count_nonpositive(manual, plane(p)) == 0);

  // The point-in-triangle predicate alone does not flag (b, e): without the previous
  // positions the step has to be reverted.
  auto tri = patch(5, ts);
  const auto r = repair_inversions(tri, plane(p));
  CHECK(r.needs_rollback);
  CHECK(count_nonpositive(tri, plane(p)) > 0);

  // With them, the crossed edge is found first and the predicate finishes the job.
  auto moved = patch(5, ts);
  const auto crossed = crossed_edges(moved, plane(before), plane(p));
  REQUIRE(crossed.size() == 1);
  CHECK(crossed[0] == find_edge(moved, b, e));
  const auto prev = plane(before);
  const auto fixed = repair_inversions(moved, plane(p), 10, &prev);
  CHECK_FALSE(fixed.needs_rollback);
  CHECK(fixed.flips == 2);
  CHECK(fixed.passes == 2);
  CHECK(find_edge(moved, d, f) >= 0);
  for (std::size_t t = 0; t < moved.triangle_count(); ++t) CHECK(oracle_area2(moved, plane(p), t) > 0);
}

TEST_CASE("edge inversion") {
  std::vector<Vec2> prev{{0, 0}, {1, 0}, {0.5, 1}};
  const auto tri = patch(3, {tri_of(0, 1, 2)});
  CHECK_FALSE(detect_edge_inversion(tri, plane(prev), plane(prev)));
  auto curr = prev;
  curr[1] = {-1, 0};
  CHECK(detect_edge_inversion(tri, plane(prev), plane(curr)));

  // Periodic: a particle wrapping through the box keeps its edge direction.
  Cloud c = lattice_cloud(12);
  const auto pt = build_initial(c.view());
  Cloud moved = c;
  perturb(moved, Real(0.01) / std::sqrt(Real(2)), 3);
  CHECK_FALSE(detect_edge_inversion(pt, c.view(), moved.view()));
  Cloud shifted = c;
  for (std::size_t i = 0; i < shifted.pos.size(); ++i) shifted.pos[i] = shifted.box.wrap(shifted.pos[i] + Vec2{7.5, -3.25}, shifted.image[i]);
  CHECK_FALSE(detect_edge_inversion(pt, c.view(), shifted.view()));
}

TEST_CASE("build on four points forms a torus") {
  const PeriodicBox box(10);
  const std::vector<Vec2> p{{2.5, 2.5}, {7.5, 2.5}, {7.5, 7.5}, {2.5, 7.5}};
  const auto tri = build_initial(p, box);
  CHECK(tri.vertex_count() == 4);
  CHECK(tri.edge_count() == 12);
  CHECK(tri.triangle_count() == 8);
  const std::vector<IVec2> img(4);
  const auto rep = audit(tri, {p, img, 10});
  CHECK_MESSAGE(rep.ok(), rep.summary());
  CHECK(rep.total_area == doctest::Approx(100));
}

TEST_CASE("build on a triangular lattice") {
  Cloud c = lattice_cloud(12);
  auto tri = build_initial(c.view());
  const auto rep = audit(tri, c.view());
  CHECK_MESSAGE(rep.ok(), rep.summary());
  CHECK(tri.triangle_count() == 2 * c.pos.size());
  CHECK(restore_delaunay(tri, c.view()) == 0);
  // Lattice triangles are congruent: sides are the row spacing or the slanted neighbour distance.
  const Real spacing = 12.0 / 12;
  const Real pitch = 12.0 / 12;
  const Real slant = std::sqrt(spacing * spacing / 4 + pitch * pitch);
  for (std::size_t t = 0; t < tri.triangle_count(); ++t) {
    std::vector<Real> sides{norm(tri.rel(c.view(), t, 0, 1)), norm(tri.rel(c.view(), t, 1, 2)),
                            norm(tri.rel(c.view(), t, 2, 0))};
    std::sort(sides.begin(), sides.end());
    CHECK(sides[0] == doctest::Approx(spacing));
    CHECK(sides[1] == doctest::Approx(slant));
    CHECK(sides[2] == doctest::Approx(slant));
  }
}

TEST_CASE("build rejects degenerate input") {
  const PeriodicBox box(10);
  CHECK_THROWS_AS(build_initial(std::vector<Vec2>{{1, 1}, {2, 2}}, box), BuildError);
  CHECK_THROWS_AS(build_initial(std::vector<Vec2>{{1, 1}, {2, 2}, {1, 1}, {5, 3}}, box), BuildError);
  CHECK_THROWS_AS(build_initial(std::vector<Vec2>{{1, 1}, {2, 2}, {3, 3}, {4, 4}}, box), BuildError);
  CHECK_THROWS_AS(build_initial(std::vector<Vec2>{{1, 1}, {1.5, 1.2}, {1.1, 1.7}}, PeriodicBox(100)), BuildError);
}

TEST_CASE("random builds pass the audit") {
  for (std::size_t n : {16u, 100u, 777u, 4096u}) {
    const Real L = std::sqrt(Real(n));
    Cloud c = random_cloud(n, L, n);
    const auto tri = build_initial(c.view());
    const auto rep = audit(tri, c.view());
    CHECK_MESSAGE(rep.ok(), rep.summary());
    CHECK(rep.euler_ok);
    CHECK(rep.closed);
  }
}

TEST_CASE("build agrees with a brute-force Delaunay oracle") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Cloud c = random_cloud(40, 7, seed);
    const auto tri = build_initial(c.view());
    CHECK(edge_keys(tri, c.view()) == oracle_delaunay_edges(c));
  }
}

TEST_CASE("restore_delaunay after perturbation matches the oracle") {
  for (std::uint64_t seed : {5u, 6u}) {
    Cloud c = random_cloud(48, 7, seed);
    auto tri = build_initial(c.view());
    Cloud moved = c;
    perturb(moved, 0.12, seed);
    std::size_t flips = 0;
    if (count_nonpositive(tri, moved.view()) > 0) {
      const auto r = repair_inversions(tri, moved.view());
      REQUIRE_FALSE(r.needs_rollback);
    }
    restore_delaunay(tri, moved.view(), 1e-12, 1000, &flips);
    CHECK(flips > 0);
    const auto rep = audit(tri, moved.view());
    CHECK_MESSAGE(rep.ok(), rep.summary());
    Cloud wrapped = moved;
    for (auto& im : wrapped.image) im = {};
    CHECK(edge_keys(tri, moved.view()) == oracle_delaunay_edges(wrapped));
  }
}

TEST_CASE("restore_delaunay examples") {
  // Diagonal (1, 2) with d inside the circumcircle of (a, b, c).
  const std::vector<Vec2> p{{0, 0}, {1, 0}, {0, 1}, {0.9, 0.9}};
  auto tri = patch(4, {tri_of(0, 1, 2), tri_of(1, 3, 2)});
  std::size_t flips = 0;
  CHECK(restore_delaunay(tri, plane(p), 1e-12, 1000, &flips) == 1);
  CHECK(flips == 1);
  CHECK(find_edge(tri, 0, 3) >= 0);
  CHECK(restore_delaunay(tri, plane(p)) == 0);

  Cloud c = lattice_cloud(34);
  REQUIRE(c.pos.size() >= 1024);
  auto big = build_initial(c.view());
  Cloud moved = c;
  perturb(moved, 0.05, 11);
  CHECK(count_nonpositive(big, moved.view()) == 0);
  restore_delaunay(big, moved.view());
  const auto rep = audit(big, moved.view());
  CHECK(rep.incircle_violations == 0);
  CHECK_MESSAGE(rep.ok(), rep.summary());

  auto capped = patch(4, {tri_of(0, 1, 2), tri_of(1, 3, 2)});
  CHECK_THROWS_AS(restore_delaunay(capped, plane(p), 1e-12, 0), NonConvergenceError);
}

TEST_CASE("conflict-free selection never shares a triangle") {
  Cloud c = random_cloud(500, 22, 9);
  const auto tri = build_initial(c.view());
  std::vector<std::uint32_t> all(tri.edge_count());
  for (std::uint32_t e = 0; e < all.size(); ++e) all[e] = e;
  std::reverse(all.begin(), all.end());
  const auto chosen = select_conflict_free(tri, all);
  CHECK(std::is_sorted(chosen.begin(), chosen.end()));
  CHECK(chosen.front() == 0);
  std::set<std::int32_t> used;
  for (auto e : chosen) {
    CHECK(used.insert(tri.edge(e).tri[0]).second);
    CHECK(used.insert(tri.edge(e).tri[1]).second);
  }
  // Maximality: every rejected edge touches a used triangle.
  std::set<std::uint32_t> picked(chosen.begin(), chosen.end());
  for (std::uint32_t e = 0; e < tri.edge_count(); ++e) {
    if (picked.count(e)) continue;
    CHECK((used.count(tri.edge(e).tri[0]) || used.count(tri.edge(e).tri[1])));
  }
}

TEST_CASE("inverted-edge flags agree with a signed-area scan for small moves") {
  Cloud c = lattice_cloud(20);
  perturb(c, 0.1, 21);
  const auto base = build_initial(c.view());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Cloud moved = c;
    perturb(moved, 0.35, 100 + seed);
    const auto pts = moved.view();
    std::set<std::size_t> bad;
    for (std::size_t t = 0; t < base.triangle_count(); ++t) {
      if (!(oracle_area2(base, pts, t) > 0)) bad.insert(t);
    }
    CHECK(count_nonpositive(base, pts) == bad.size());
    const auto flagged = detect_inverted_triangles(base, pts);
    for (const auto& fd : flagged) {
      const Edge& ed = base.edge(fd.edge);
      CHECK((bad.count(static_cast<std::size_t>(ed.tri[0])) || bad.count(static_cast<std::size_t>(ed.tri[1]))));
    }
    CHECK(flagged.empty() == bad.empty());
  }
}

TEST_CASE("audit reports corrupted links and inverted triangles") {
  Cloud c = random_cloud(64, 8, 4);
  auto tri = build_initial(c.view());
  CHECK(audit(tri, c.view()).ok());
  auto broken = tri;
  broken.mutable_edge(3).slot[0] = static_cast<std::uint8_t>((broken.edge(3).slot[0] + 1) % 3);
  const auto rep = audit(broken, c.view());
  CHECK_FALSE(rep.ok());
  CHECK(rep.link_errors > 0);

  Cloud moved = c;
  const auto t0 = tri.triangle(0);
  // Drag one vertex of triangle 0 across its opposite edge.
  const Vec2 across = tri.rel(c.view(), 0, 0, 1) + tri.rel(c.view(), 0, 0, 2);
  moved.pos[t0.v[0]] = moved.box.wrap(moved.pos[t0.v[0]] + across, moved.image[t0.v[0]]);
  const auto rep2 = audit(tri, moved.view());
  CHECK(rep2.nonpositive_triangles > 0);
  CHECK_FALSE(rep2.ok());
}

TEST_CASE("triangulation dump") {
  Cloud c = random_cloud(10, 4, 2);
  const auto tri = build_initial(c.view());
  std::ostringstream out;
  tri.write_dump(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# brownsim-triangulation", 0) == 0);
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == tri.triangle_count() + tri.edge_count());
}

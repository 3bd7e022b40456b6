#include "planar_delaunay.hpp"

#include <algorithm>
#include <cmath>

#include "brownsim/core/errors.hpp"
#include "brownsim/triangulation/predicates.hpp"

namespace brownsim::detail {

namespace {

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int bits) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (bits - 1); s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

int nx(int k) { return k == 2 ? 0 : k + 1; }
int pv(int k) { return k == 0 ? 2 : k - 1; }

}  // namespace

std::vector<std::uint32_t> hilbert_order(std::span<const Vec2> points) {
  std::vector<std::uint32_t> order(points.size());
  if (points.empty()) return order;
  Real lo_x = points[0].x, hi_x = lo_x, lo_y = points[0].y, hi_y = lo_y;
  for (const Vec2& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const Real extent = std::max({hi_x - lo_x, hi_y - lo_y, Real(1e-30)});
  constexpr int kBits = 16;
  const Real scale = Real((1u << kBits) - 1) / extent;
  std::vector<std::uint64_t> key(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = static_cast<std::uint32_t>((points[i].x - lo_x) * scale);
    const auto y = static_cast<std::uint32_t>((points[i].y - lo_y) * scale);
    key[i] = hilbert_index(x, y, kBits);
    order[i] = static_cast<std::uint32_t>(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; });
  return order;
}

PlanarDelaunay::PlanarDelaunay(std::span<const Vec2> points)
    : pts_(points.begin(), points.end()), n_input_(points.size()) {
  if (points.empty()) return;
  Real lo_x = points[0].x, hi_x = lo_x, lo_y = points[0].y, hi_y = lo_y;
  for (const Vec2& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const Real m = std::max({hi_x - lo_x, hi_y - lo_y, Real(1)});
  const Vec2 c{(lo_x + hi_x) / 2, (lo_y + hi_y) / 2};
  const auto s = static_cast<std::int32_t>(n_input_);
  pts_.push_back({c.x - 50 * m, c.y - 30 * m});
  pts_.push_back({c.x + 50 * m, c.y - 30 * m});
  pts_.push_back({c.x, c.y + 50 * m});
  tris_.reserve(2 * n_input_ + 8);
  tris_.push_back({{s, s + 1, s + 2}, {-1, -1, -1}});

  std::int32_t hint = 0;
  for (std::uint32_t idx : hilbert_order(points)) {
    const auto p = static_cast<std::int32_t>(idx);
    const std::int32_t t = locate(pts_[p], hint);
    insert(p, t);
    hint = static_cast<std::int32_t>(tris_.size()) - 1;
  }
}

std::int32_t PlanarDelaunay::locate(Vec2 p, std::int32_t start) {
  std::int32_t t = start;
  const std::size_t limit = 4 * tris_.size() + 64;
  for (std::size_t steps = 0; steps < limit; ++steps) {
    walk_state_ ^= walk_state_ << 13;
    walk_state_ ^= walk_state_ >> 7;
    walk_state_ ^= walk_state_ << 17;
    const int r = static_cast<int>(walk_state_ % 3);
    bool inside = true;
    for (int j = 0; j < 3; ++j) {
      const int k = (r + j) % 3;
      const Tri& tri = tris_[t];
      if (orient(pts_[tri.v[nx(k)]], pts_[tri.v[pv(k)]], p) < 0) {
        t = tri.n[k];
        inside = false;
        break;
      }
    }
    if (inside) return t;
    if (t < 0) break;
  }
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    const Tri& tri = tris_[i];
    if (orient(pts_[tri.v[0]], pts_[tri.v[1]], p) >= 0 &&
        orient(pts_[tri.v[1]], pts_[tri.v[2]], p) >= 0 &&
        orient(pts_[tri.v[2]], pts_[tri.v[0]], p) >= 0) {
      return static_cast<std::int32_t>(i);
    }
  }
  throw BuildError("point location failed during planar triangulation");
}

void PlanarDelaunay::relink(std::int32_t nb, std::int32_t from, std::int32_t to) {
  if (nb < 0) return;
  for (auto& x : tris_[nb].n) {
    if (x == from) {
      x = to;
      return;
    }
  }
}

void PlanarDelaunay::insert(std::int32_t p, std::int32_t t) {
  const Tri& tri = tris_[t];
  for (int k = 0; k < 3; ++k) {
    if (pts_[tri.v[k]] == pts_[p]) throw BuildError("coincident input points");
  }
  for (int k = 0; k < 3; ++k) {
    if (orient(pts_[tri.v[nx(k)]], pts_[tri.v[pv(k)]], pts_[p]) == 0) {
      split_edge(p, t, k);
      legalize();
      return;
    }
  }
  split_triangle(p, t);
  legalize();
}

void PlanarDelaunay::split_triangle(std::int32_t p, std::int32_t t) {
  const Tri old = tris_[t];
  const auto tb = static_cast<std::int32_t>(tris_.size());
  const std::int32_t tc = tb + 1;
  const auto [v0, v1, v2] = old.v;
  tris_[t] = {{p, v1, v2}, {old.n[0], tb, tc}};
  tris_.push_back({{p, v2, v0}, {old.n[1], tc, t}});
  tris_.push_back({{p, v0, v1}, {old.n[2], t, tb}});
  relink(old.n[1], t, tb);
  relink(old.n[2], t, tc);
  stack_.insert(stack_.end(), {t, tb, tc});
}

void PlanarDelaunay::split_edge(std::int32_t p, std::int32_t t, int k) {
  const Tri tt = tris_[t];
  const std::int32_t c = tt.v[k];
  const std::int32_t a = tt.v[nx(k)];
  const std::int32_t b = tt.v[pv(k)];
  const std::int32_t u = tt.n[k];
  if (u < 0) throw BuildError("point on the enclosing triangle boundary");
  const Tri uu = tris_[u];
  int j = 0;
  while (uu.n[j] != t) ++j;
  const std::int32_t d = uu.v[j];
  // uu = (d, b, a) starting at slot j.
  const std::int32_t t_ca = tt.n[pv(k)];  // opposite b in t
  const std::int32_t t_bc = tt.n[nx(k)];  // opposite a in t
  const std::int32_t u_db = uu.n[pv(j)];  // opposite a in u
  const std::int32_t u_ad = uu.n[nx(j)];  // opposite b in u

  const std::int32_t A = t;
  const std::int32_t C = u;
  const auto B = static_cast<std::int32_t>(tris_.size());
  const std::int32_t D = B + 1;
  tris_[A] = {{p, c, a}, {t_ca, D, B}};
  tris_[C] = {{p, d, b}, {u_db, B, D}};
  tris_.push_back({{p, b, c}, {t_bc, A, C}});
  tris_.push_back({{p, a, d}, {u_ad, C, A}});
  relink(t_bc, t, B);
  relink(u_ad, u, D);
  stack_.insert(stack_.end(), {A, B, C, D});
}

void PlanarDelaunay::legalize() {
  while (!stack_.empty()) {
    const std::int32_t t = stack_.back();
    stack_.pop_back();
    const Tri tt = tris_[t];
    const std::int32_t u = tt.n[0];
    if (u < 0) continue;
    const Tri uu = tris_[u];
    int j = 0;
    while (uu.n[j] != t) ++j;
    const std::int32_t p = tt.v[0], a = tt.v[1], b = tt.v[2], q = uu.v[j];
    const Vec2 P = pts_[p], A = pts_[a], B = pts_[b], Q = pts_[q];
    if (!(incircle_det(P, A, B, Q) > 0)) continue;
    if (!(orient(P, A, Q) > 0 && orient(Q, B, P) > 0)) continue;
    // uu = (q, b, a) from slot j.
    const std::int32_t u_aq = uu.n[nx(j)];  // opposite b in u
    const std::int32_t u_qb = uu.n[pv(j)];  // opposite a in u
    const std::int32_t t_pa = tt.n[2];
    const std::int32_t t_bp = tt.n[1];
    tris_[t] = {{p, a, q}, {u_aq, u, t_pa}};
    tris_[u] = {{p, q, b}, {u_qb, t_bp, t}};
    relink(u_aq, u, t);
    relink(t_bp, t, u);
    stack_.push_back(t);
    stack_.push_back(u);
  }
}

std::vector<std::array<std::int32_t, 3>> PlanarDelaunay::triangles() const {
  std::vector<std::array<std::int32_t, 3>> out;
  out.reserve(tris_.size());
  const auto n = static_cast<std::int32_t>(n_input_);
  for (const Tri& t : tris_) {
    if (t.v[0] < n && t.v[1] < n && t.v[2] < n) out.push_back(t.v);
  }
  return out;
}

}  // namespace brownsim::detail

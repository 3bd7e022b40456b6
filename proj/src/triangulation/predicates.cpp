#include "brownsim/triangulation/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace brownsim {

Real incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Vec2 ad = a - d;
  const Vec2 bd = b - d;
  const Vec2 cd = c - d;
  return norm2(ad) * cross(bd, cd) - norm2(bd) * cross(ad, cd) + norm2(cd) * cross(ad, bd);
}

bool incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Real tol) {
  const Vec2 ad = a - d;
  const Vec2 bd = b - d;
  const Vec2 cd = c - d;
  const Real scale = std::max({std::abs(ad.x), std::abs(ad.y), std::abs(bd.x), std::abs(bd.y),
                               std::abs(cd.x), std::abs(cd.y)});
  const Real s2 = scale * scale;
  return incircle_det(a, b, c, d) > tol * s2 * s2;
}

bool point_in_triangle(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 p) {
  const Vec2 e0 = v2 - v1;
  const Vec2 e1 = v3 - v1;
  const Vec2 w = p - v1;
  const Real den = cross(e0, e1);
  const Real s = cross(w, e1);  // s * den
  const Real t = cross(e0, w);  // t * den
  if (den > 0) return s >= 0 && t >= 0 && s + t <= den;
  if (den < 0) return s <= 0 && t <= 0 && s + t >= den;
  return false;
}

bool inversion_flip_needed(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 v4) {
  return point_in_triangle(v1, v2, v3, v4) || point_in_triangle(v1, v2, v4, v3);
}

Real circumdiameter(Vec2 ab, Vec2 ac) {
  const Real area2 = std::abs(cross(ab, ac));
  if (area2 == 0) return std::numeric_limits<Real>::infinity();
  return norm(ab) * norm(ac) * norm(ac - ab) / area2;
}

}  // namespace brownsim

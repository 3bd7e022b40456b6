#pragma once

#include "brownsim/core/vec2.hpp"

namespace brownsim {

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
inline Real orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

/// Raw in-circle determinant: positive when d lies inside the circumcircle of the
/// counter-clockwise triangle (a, b, c).
Real incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// True iff d is inside the circumcircle of counter-clockwise (a, b, c) by more than
/// tol * scale^4, where scale is the largest coordinate offset from d. Cocircular
/// points within tolerance report false.
bool incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Real tol);

/// Closed point-in-triangle test in barycentric form: p = v1 + s (v2 - v1) + t (v3 - v1)
/// with s, t >= 0 and s + t <= 1. Works for either winding; false for degenerate triangles.
bool point_in_triangle(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 p);

/// Inverted-triangle flip predicate for edge (v1, v2) with opposite vertices v3 and v4:
/// v4 inside triangle (v1, v2, v3) or v3 inside triangle (v1, v2, v4).
bool inversion_flip_needed(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 v4);

/// Circumdiameter of a triangle given two edge vectors from a common vertex.
Real circumdiameter(Vec2 ab, Vec2 ac);

}  // namespace brownsim

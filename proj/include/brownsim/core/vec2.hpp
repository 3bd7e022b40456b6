#pragma once

#include <cmath>
#include <cstdint>

namespace brownsim {

#ifdef BROWNSIM_SINGLE_PRECISION
using Real = float;
#else
using Real = double;
#endif

struct Vec2 {
  Real x = 0;
  Real y = 0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(Real s) { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, Real s) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator*(Real s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr Real dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr Real cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr Real norm2(Vec2 a) { return dot(a, a); }
inline Real norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Integer lattice vector: periodic image counters and triangle image shifts.
struct IVec2 {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr IVec2 operator-(IVec2 a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(IVec2 a, IVec2 b) = default;
  friend constexpr auto operator<=>(IVec2 a, IVec2 b) = default;
};

}  // namespace brownsim

#pragma once

#include <cstddef>

#include "brownsim/core/vec2.hpp"

namespace brownsim {

/// Square periodic domain [0, L)^2.
class PeriodicBox {
 public:
  explicit PeriodicBox(Real length);

  Real length() const { return length_; }
  Real half() const { return half_; }

  /// Shortest displacement from a to b; components in [-L/2, L/2).
  Vec2 min_image(Vec2 a, Vec2 b) const {
    return {fold(b.x - a.x), fold(b.y - a.y)};
  }

  /// Folds a coordinate difference in (-L, L) into [-L/2, L/2).
  Real fold(Real d) const {
    if (d >= half_) return d - length_;
    if (d < -half_) return d + length_;
    return d;
  }

  Real wrap(Real p) const;
  Vec2 wrap(Vec2 p) const { return {wrap(p.x), wrap(p.y)}; }

  /// Wraps p and accumulates the number of box lengths removed into image.
  Real wrap(Real p, std::int32_t& image) const;
  Vec2 wrap(Vec2 p, IVec2& image) const { return {wrap(p.x, image.x), wrap(p.y, image.y)}; }

 private:
  Real length_;
  Real half_;
};

Vec2 min_image_disp(const PeriodicBox& box, Vec2 a, Vec2 b);
Vec2 wrap(const PeriodicBox& box, Vec2 p);

/// Densest packing fraction of equal disks in the plane, pi / (2 sqrt 3).
inline constexpr Real kHexagonalPacking = 0.9069;

/// Box length giving packing fraction rho = N pi (sigma/2)^2 / L^2.
Real box_length_for_density(std::size_t n, Real sigma, Real rho);

}  // namespace brownsim

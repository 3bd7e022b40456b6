#include "brownsim/core/box.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "brownsim/core/errors.hpp"

namespace brownsim {

PeriodicBox::PeriodicBox(Real length) : length_(length), half_(length / 2) {
  if (!(length > 0) || !std::isfinite(length)) {
    throw ConfigError("box length must be positive and finite, got " + std::to_string(length));
  }
}

Real PeriodicBox::wrap(Real p) const {
  std::int32_t ignored = 0;
  return wrap(p, ignored);
}

Real PeriodicBox::wrap(Real p, std::int32_t& image) const {
  if (p >= 0 && p < length_) return p;
  Real k = std::floor(p / length_);
  Real q = p - k * length_;
  // floor(p/L) can be off by one after rounding.
  if (q >= length_) {
    q -= length_;
    k += 1;
  } else if (q < 0) {
    q += length_;
    k -= 1;
  }
  if (q >= length_ || q < 0) q = 0;
  image += static_cast<std::int32_t>(k);
  return q;
}

Vec2 min_image_disp(const PeriodicBox& box, Vec2 a, Vec2 b) { return box.min_image(a, b); }

Vec2 wrap(const PeriodicBox& box, Vec2 p) { return box.wrap(p); }

Real box_length_for_density(std::size_t n, Real sigma, Real rho) {
  if (n == 0) throw ConfigError("particle count must be at least 1");
  if (!(sigma > 0)) throw ConfigError("sigma must be positive");
  if (!(rho > 0) || !(rho < kHexagonalPacking)) {
    throw ConfigError("packing fraction " + std::to_string(rho) +
                      " outside (0, 0.9069): exceeds hexagonal close packing");
  }
  const Real disk = std::numbers::pi_v<Real> * (sigma / 2) * (sigma / 2);
  return std::sqrt(static_cast<Real>(n) * disk / rho);
}

}  // namespace brownsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "brownsim/core/box.hpp"
#include "brownsim/core/vec2.hpp"

namespace brownsim {

using TypeIndex = std::uint16_t;

/// Structure-of-arrays particle state. Positions stay wrapped into the box; image
/// counters record how many box lengths each particle has crossed so that the
/// continuous (lifted) trajectory is pos + L * image.
class ParticleSystem {
 public:
  ParticleSystem(PeriodicBox box, std::size_t n);

  std::size_t size() const { return pos.size(); }
  const PeriodicBox& box() const { return box_; }

  /// Moves particle i by delta, wrapping and updating its image counter.
  void displace(std::size_t i, Vec2 delta) { pos[i] = box_.wrap(pos[i] + delta, image[i]); }

  /// Copies the current positions into the previous-position buffer.
  void save_prev();
  /// Restores positions and image counters from the previous-position buffer.
  void restore_prev();

  Vec2 lifted(std::size_t i) const {
    return {pos[i].x + box_.length() * Real(image[i].x), pos[i].y + box_.length() * Real(image[i].y)};
  }

  std::vector<Vec2> pos;
  std::vector<IVec2> image;
  std::vector<Vec2> pos_prev;
  std::vector<IVec2> image_prev;
  std::vector<TypeIndex> type_of;
  std::vector<Real> alpha;
  std::vector<Real> mu;
  std::vector<Vec2> force;

 private:
  PeriodicBox box_;
};

/// Read-only view of wrapped positions plus image counters.
struct LiftedPoints {
  std::span<const Vec2> pos;
  std::span<const IVec2> image;
  Real length = 1;

  std::size_t size() const { return pos.size(); }
  IVec2 image_of(std::size_t i) const { return image.empty() ? IVec2{} : image[i]; }

  static LiftedPoints current(const ParticleSystem& sys) {
    return {sys.pos, sys.image, sys.box().length()};
  }
  static LiftedPoints previous(const ParticleSystem& sys) {
    return {sys.pos_prev, sys.image_prev, sys.box().length()};
  }
};

}  // namespace brownsim

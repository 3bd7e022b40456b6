#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "brownsim/app/snapshot.hpp"

namespace brownsim {

struct RenderOptions {
  Real sigma = 1;
  /// When non-empty, colour by overlap participation (red) instead of type.
  std::span<const std::uint8_t> locality;
};

/// One circle of radius sigma/2 per particle in a viewBox equal to the box.
/// Type 1 is green, type 2 blue; locality mode uses red and green.
std::string render_svg(const Snapshot& snap, const RenderOptions& options = {});

}  // namespace brownsim

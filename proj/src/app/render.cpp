#include "brownsim/app/render.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "brownsim/core/errors.hpp"

namespace brownsim {

namespace {

constexpr std::array<const char*, 6> kTypeColors = {"#2ca02c", "#1f77b4", "#ff7f0e",
                                                    "#9467bd", "#8c564b", "#7f7f7f"};
constexpr const char* kTouched = "#d62728";
constexpr const char* kUntouched = "#2ca02c";

std::string num(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(v),
                                 std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string render_svg(const Snapshot& snap, const RenderOptions& options) {
  const bool locality = !options.locality.empty();
  if (locality && options.locality.size() != snap.size()) {
    throw ConfigError("locality flags cover " + std::to_string(options.locality.size()) +
                      " particles but the snapshot has " + std::to_string(snap.size()));
  }
  const std::string L = num(snap.length);
  const std::string r = num(options.sigma / 2);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << L << ' ' << L
      << "\" width=\"800\" height=\"800\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << L << "\" height=\"" << L << "\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < snap.size(); ++i) {
    const char* fill = nullptr;
    if (locality) {
      fill = options.locality[i] ? kTouched : kUntouched;
    } else {
      const std::uint32_t t = snap.types[i] == 0 ? 0 : snap.types[i] - 1;
      fill = kTypeColors[t % kTypeColors.size()];
    }
    // SVG y grows downwards; flip so the picture matches the simulation axes.
    out << "<circle cx=\"" << num(snap.pos[i].x) << "\" cy=\"" << num(snap.length - snap.pos[i].y)
        << "\" r=\"" << r << "\" fill=\"" << fill << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace brownsim

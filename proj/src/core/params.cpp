#include "brownsim/core/params.hpp"

#include <string>

#include "brownsim/core/errors.hpp"

namespace brownsim {

void SimParams::validate(bool short_range) const {
  if (!(sigma > 0)) throw ConfigError("sigma must be positive");
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (!(diffusion >= 0)) throw ConfigError("diffusion must be non-negative");
  if (!(skin > 0)) throw ConfigError("skin must be positive");
  if (!(noise_clamp > 0)) throw ConfigError("noise clamp must be positive");
  if (displacement_cap < 0) throw ConfigError("displacement cap must be non-negative");
  if (short_range && !(r_cutoff > sigma)) {
    throw ConfigError("r_cutoff (" + std::to_string(r_cutoff) + ") must exceed sigma in short-range mode");
  }
  if (max_overlap_iters == 0) throw ConfigError("max_overlap_iters must be at least 1");
}

}  // namespace brownsim

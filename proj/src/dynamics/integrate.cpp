#include "brownsim/dynamics/integrate.hpp"

#include <string>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"
#include "brownsim/core/rng.hpp"

namespace brownsim {

void integrate(ParticleSystem& sys, std::span<const Vec2> forces, const SimParams& params,
               Real dt, NoiseKey key, bool noise) {
  const auto n = static_cast<std::int64_t>(sys.size());
  const Real scale = params.noise_scale(dt);
  std::int64_t bad = -1;
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(max : bad)
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec2 f = forces[i];
    if (!is_finite(f)) {
      bad = std::max(bad, i);
      continue;
    }
    Vec2 step = f * dt;
    if (noise) {
      RngStream rng(key.seed, stream_id(StreamPurpose::kTranslation, static_cast<std::uint64_t>(i)),
                    key.tick << 8);
      const Real xi_x = clamped_gaussian(rng, params.noise_clamp);
      const Real xi_y = clamped_gaussian(rng, params.noise_clamp);
      step += Vec2{xi_x, xi_y} * scale;
    }
    sys.displace(static_cast<std::size_t>(i), step);
  }
  if (bad >= 0) {
    throw StepFailure("non-finite force on particle " + std::to_string(bad));
  }
}

}  // namespace brownsim

#include "brownsim/dynamics/overlap.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"

namespace brownsim {

namespace {

// Displacement of i away from j; d points from i to j.
inline Vec2 push(Vec2 d, Real r, Real sigma, std::uint32_t i, std::uint32_t j) {
  const Real delta = sigma - r;
  if (r > 0) return d * (-delta / r);
  return Vec2{i < j ? -delta : delta, 0};
}

}  // namespace

std::size_t correct_overlaps(ParticleSystem& sys, const PairSet& pairs, const SimParams& params,
                             std::vector<std::uint8_t>& flags, const OverlapOptions& options) {
  const std::size_t n = sys.size();
  const auto ni = static_cast<std::int64_t>(n);
  if (flags.size() < n) flags.resize(n, 0);
  const PeriodicBox& box = sys.box();
  const Real sigma = params.sigma;
  const Real threshold = params.overlap_threshold();
  const Real cap = params.cap();
  std::vector<Vec2> acc(n);
  std::size_t iterations = 0;

  for (;;) {
    std::size_t overlapping = 0;
    if (options.accumulation == Accumulation::kDeterministic) {
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(+ : overlapping)
      for (std::int64_t i = 0; i < ni; ++i) {
        Vec2 a{0, 0};
        const Vec2 pi = sys.pos[i];
        for (std::uint32_t j : pairs.adjacent(static_cast<std::size_t>(i))) {
          const Vec2 d = box.min_image(pi, sys.pos[j]);
          const Real r = norm(d);
          if (r < threshold) {
            a += push(d, r, sigma, static_cast<std::uint32_t>(i), j);
            ++overlapping;
          }
        }
        acc[i] = a;
      }
    } else {
      const auto& list = pairs.pairs();
      const auto m = static_cast<std::int64_t>(list.size());
      std::fill(acc.begin(), acc.end(), Vec2{0, 0});
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(+ : overlapping)
      for (std::int64_t p = 0; p < m; ++p) {
        const auto [i, j] = list[p];
        const Vec2 d = box.min_image(sys.pos[i], sys.pos[j]);
        const Real r = norm(d);
        if (!(r < threshold)) continue;
        const Vec2 di = push(d, r, sigma, i, j);
        const Vec2 dj = push(-d, r, sigma, j, i);
        std::atomic_ref<Real>(acc[i].x).fetch_add(di.x, std::memory_order_relaxed);
        std::atomic_ref<Real>(acc[i].y).fetch_add(di.y, std::memory_order_relaxed);
        std::atomic_ref<Real>(acc[j].x).fetch_add(dj.x, std::memory_order_relaxed);
        std::atomic_ref<Real>(acc[j].y).fetch_add(dj.y, std::memory_order_relaxed);
        overlapping += 2;
      }
    }
    if (overlapping == 0) return iterations;
    if (options.iterations_used + iterations >= params.max_overlap_iters) {
      std::ostringstream msg;
      msg << "overlap correction did not converge after " << options.iterations_used + iterations
          << " iterations; " << overlapping / 2 << " candidate pairs still overlap";
      throw NonConvergenceError(msg.str());
    }

#pragma omp parallel for num_threads(thread_count()) schedule(static)
    for (std::int64_t i = 0; i < ni; ++i) {
      Vec2 a = acc[i];
      if (a.x == 0 && a.y == 0) continue;
      const Real len = norm(a);
      if (len > cap) a = a * (cap / len);
      sys.displace(static_cast<std::size_t>(i), a);
      flags[i] = 1;
    }
    ++iterations;
  }
}

}  // namespace brownsim

#include "brownsim/forces/forces.hpp"

#include <algorithm>
#include <atomic>
#include <vector>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"
#include "brownsim/forces/neighbors.hpp"

namespace brownsim {

Vec2 pair_force(const ForceLaw& law, Real mu_i, Real alpha_k, Vec2 r_ik) {
  const Real r2 = norm2(r_ik);
  if (!(r2 > 0)) throw SingularityError(0, 0);
  return pair_force_unchecked(law, mu_i, alpha_k, r_ik, r2);
}

namespace {

[[noreturn]] void report_singular(const ParticleSystem& sys) {
  const PeriodicBox& box = sys.box();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t k = i + 1; k < sys.size(); ++k) {
      if (norm2(box.min_image(sys.pos[k], sys.pos[i])) == 0) throw SingularityError(i, k);
    }
  }
  throw SingularityError(0, 0);
}

}  // namespace

void long_range_forces(const ParticleSystem& sys, std::span<Vec2> out, std::size_t tile) {
  const std::size_t n = sys.size();
  tile = std::max<std::size_t>(tile, 1);
  const Real L = sys.box().length();
  const Real half = sys.box().half();
  const std::vector<Real>& alpha = sys.alpha;
  const auto tiles = static_cast<std::int64_t>((n + tile - 1) / tile);
  int singular = 0;

#pragma omp parallel num_threads(thread_count()) reduction(| : singular)
  {
    // Source particles are staged one tile at a time; the inner loop runs across the
    // receiving tile so every receiver still accumulates its sources in ascending order.
    std::vector<Real> sx(tile), sy(tile), sa(tile);
    std::vector<Real> xi(tile), yi(tile), mi(tile), ax(tile), ay(tile), zc(tile);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t it = 0; it < tiles; ++it) {
      const std::size_t i0 = static_cast<std::size_t>(it) * tile;
      const std::size_t ni = std::min(n, i0 + tile) - i0;
      for (std::size_t i = 0; i < ni; ++i) {
        xi[i] = sys.pos[i0 + i].x;
        yi[i] = sys.pos[i0 + i].y;
        mi[i] = sys.mu[i0 + i];
        ax[i] = ay[i] = zc[i] = 0;
      }
      for (std::size_t k0 = 0; k0 < n; k0 += tile) {
        const std::size_t m = std::min(n, k0 + tile) - k0;
        for (std::size_t k = 0; k < m; ++k) {
          sx[k] = sys.pos[k0 + k].x;
          sy[k] = sys.pos[k0 + k].y;
          sa[k] = alpha[k0 + k];
        }
        for (std::size_t k = 0; k < m; ++k) {
          const Real xk = sx[k];
          const Real yk = sy[k];
          const Real ak = sa[k];
          for (std::size_t i = 0; i < ni; ++i) {
            // Branch-free so the loop vectorises; the zero-separation case divides by 1.
            Real dx = xi[i] - xk;
            Real dy = yi[i] - yk;
            dx -= dx >= half ? L : Real(0);
            dx += dx < -half ? L : Real(0);
            dy -= dy >= half ? L : Real(0);
            dy += dy < -half ? L : Real(0);
            const Real r2 = dx * dx + dy * dy;
            const bool live = r2 > 0;
            const Real safe = live ? r2 : Real(1);
            const Real s = mi[i] * ak / (safe * std::sqrt(safe));
            zc[i] += live ? Real(0) : Real(1);
            ax[i] += live ? dx * s : Real(0);
            ay[i] += live ? dy * s : Real(0);
          }
        }
      }
      // Each particle meets itself exactly once at zero separation.
      for (std::size_t i = 0; i < ni; ++i) {
        if (zc[i] != 1) singular |= 1;
        out[i0 + i] = {ax[i], ay[i]};
      }
    }
  }
  if (singular) report_singular(sys);
}

void short_range_forces(const ParticleSystem& sys, const VerletList& list, Real r_cutoff,
                        std::span<Vec2> out, Accumulation mode) {
  const auto n = static_cast<std::int64_t>(sys.size());
  const PeriodicBox& box = sys.box();
  const ForceLaw law = ForceLaw::short_range(r_cutoff);
  int singular = 0;

  if (mode == Accumulation::kDeterministic) {
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(| : singular)
    for (std::int64_t i = 0; i < n; ++i) {
      Vec2 f{0, 0};
      const Vec2 pi = sys.pos[i];
      const Real mi = sys.mu[i];
      for (std::uint32_t k : list.adjacent(static_cast<std::size_t>(i))) {
        const Vec2 r = box.min_image(sys.pos[k], pi);
        const Real r2 = norm2(r);
        if (!(r2 > 0)) {
          singular |= 1;
          continue;
        }
        f += pair_force_unchecked(law, mi, sys.alpha[k], r, r2);
      }
      out[i] = f;
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = {0, 0};
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 64) reduction(| : singular)
    for (std::int64_t i = 0; i < n; ++i) {
      const Vec2 pi = sys.pos[i];
      for (std::uint32_t k : list.upper(static_cast<std::size_t>(i))) {
        const Vec2 r = box.min_image(sys.pos[k], pi);
        const Real r2 = norm2(r);
        if (!(r2 > 0)) {
          singular |= 1;
          continue;
        }
        const Vec2 fi = pair_force_unchecked(law, sys.mu[i], sys.alpha[k], r, r2);
        const Vec2 fk = pair_force_unchecked(law, sys.mu[k], sys.alpha[i], -r, r2);
        std::atomic_ref<Real>(out[i].x).fetch_add(fi.x, std::memory_order_relaxed);
        std::atomic_ref<Real>(out[i].y).fetch_add(fi.y, std::memory_order_relaxed);
        std::atomic_ref<Real>(out[k].x).fetch_add(fk.x, std::memory_order_relaxed);
        std::atomic_ref<Real>(out[k].y).fetch_add(fk.y, std::memory_order_relaxed);
      }
    }
  }
  if (singular) report_singular(sys);
}

}  // namespace brownsim

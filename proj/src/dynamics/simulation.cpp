#include "brownsim/dynamics/simulation.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"
#include "brownsim/core/rng.hpp"
#include "brownsim/dynamics/integrate.hpp"
#include "brownsim/dynamics/overlap.hpp"
#include "brownsim/triangulation/build.hpp"

namespace brownsim {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

Simulation::Simulation(ParticleSystem sys, SimOptions options)
    : sys_(std::move(sys)), opt_(std::move(options)) {
  opt_.params.n = sys_.size();
  opt_.params.validate(opt_.mode == SimMode::kShortRange && opt_.forces);
  if (opt_.rotational_diffusion < 0) opt_.rotational_diffusion = opt_.params.diffusion;
  sys_.save_prev();

  if (opt_.mode == SimMode::kAbp) {
    abp_.v0 = opt_.v0;
    abp_.rotational_diffusion = opt_.rotational_diffusion;
    abp_.theta.resize(sys_.size());
    for (std::size_t i = 0; i < sys_.size(); ++i) {
      RngStream rng(opt_.seed, stream_id(StreamPurpose::kInitialAngle, i));
      abp_.theta[i] = static_cast<Real>(2 * std::numbers::pi * rng.uniform());
    }
  }
  if (uses_triangulation()) {
    BuildOptions bo;
    bo.incircle_tol = opt_.params.incircle_tol;
    tri_ = build_initial(LiftedPoints::current(sys_), bo);
  } else {
    StepStats ignored;
    rebuild_verlet(ignored);
  }
}

bool Simulation::uses_triangulation() const {
  return opt_.mode == SimMode::kLongRange ||
         (opt_.mode == SimMode::kAbp && opt_.abp_neighbors == NeighborSource::kTriangulation);
}

StepStats Simulation::step() {
  switch (opt_.mode) {
    case SimMode::kLongRange:
      return step_long_range();
    case SimMode::kShortRange:
      return step_short_range();
    case SimMode::kAbp:
      return abp_step();
  }
  throw Error("unknown simulation mode");
}

void Simulation::rebuild_verlet(StepStats& stats) {
  const Real reach = opt_.mode == SimMode::kShortRange && opt_.forces ? opt_.params.list_radius()
                                                                      : opt_.params.sigma + opt_.params.skin;
  verlet_ = build_verlet(sys_.pos, sys_.box(), reach, opt_.params.skin);
  ++stats.verlet_rebuilds;
}

bool Simulation::maintain(const LiftedPoints& prev, StepStats& stats) {
  const auto t0 = Clock::now();
  const LiftedPoints curr = LiftedPoints::current(sys_);
  const SimParams& p = opt_.params;
  bool ok = !detect_edge_inversion(*tri_, prev, curr);
  if (ok && count_nonpositive(*tri_, curr) > 0) {
    PeriodicTriangulation backup = *tri_;
    const RepairResult rr = repair_inversions(*tri_, curr, p.max_inversion_passes, &prev);
    if (rr.needs_rollback) {
      *tri_ = std::move(backup);
      ok = false;
    } else {
      stats.flip_passes += rr.passes;
      stats.inversion_repairs += rr.flips;
    }
  }
  if (ok) stats.flip_passes += restore_delaunay(*tri_, curr, p.incircle_tol, p.max_flip_passes);
  stats.maintain_ms += ms_since(t0);
  return ok;
}

void Simulation::refresh_pairs(StepStats&) {
  if (uses_triangulation()) {
    pairs_ = triangulation_pairs(*tri_);
  } else {
    pairs_ = verlet_pairs(*verlet_, sys_.box(), opt_.params.sigma + opt_.params.skin);
  }
}

void Simulation::resolve_overlaps(StepStats& stats) {
  const auto t0 = Clock::now();
  const double maintain_before = stats.maintain_ms;
  const SimParams& p = opt_.params;
  const Real threshold = p.overlap_threshold();
  refresh_pairs(stats);
  double scan_ms = 0;
  if (opt_.debug_scan) {
    const auto ts = Clock::now();
    for (const auto& [i, j] : brute_force_overlaps(sys_, threshold)) {
      if (!pairs_.contains(i, j)) ++stats.missed_pairs;
    }
    scan_ms += ms_since(ts);
  }

  std::size_t used = 0;
  OverlapOptions oo;
  oo.accumulation = opt_.accumulation;
  for (;;) {
    if (uses_triangulation()) {
      scratch_pos_ = sys_.pos;
      scratch_image_ = sys_.image;
    }
    oo.iterations_used = used;
    const std::size_t it = correct_overlaps(sys_, pairs_, p, stats.overlap_flags, oo);
    used += it;
    if (it == 0) break;
    if (uses_triangulation()) {
      // Corrections move particles, so the triangulation is brought up to date before
      // the candidate pairs are checked again.
      const LiftedPoints before{scratch_pos_, scratch_image_, sys_.box().length()};
      if (!maintain(before, stats)) {
        const auto tb = Clock::now();
        BuildOptions bo;
        bo.incircle_tol = p.incircle_tol;
        tri_ = build_initial(LiftedPoints::current(sys_), bo);
        ++stats.triangulation_rebuilds;
        stats.maintain_ms += ms_since(tb);
      }
      refresh_pairs(stats);
    } else if (verlet_needs_rebuild(*verlet_, sys_.pos, sys_.box())) {
      const auto tb = Clock::now();
      rebuild_verlet(stats);
      stats.maintain_ms += ms_since(tb);
      refresh_pairs(stats);
    } else {
      break;
    }
  }
  stats.overlap_iterations = used;
  if (opt_.debug_scan) {
    const auto ts = Clock::now();
    stats.missed_pairs += brute_force_overlaps(sys_, threshold).size();
    scan_ms += ms_since(ts);
  }
  stats.overlap_ms += ms_since(t0) - (stats.maintain_ms - maintain_before) - scan_ms;
}

void Simulation::finish(StepStats& stats) {
  if (stats.overlap_flags.size() < sys_.size()) stats.overlap_flags.resize(sys_.size(), 0);
  time_ += stats.dt_used;
  ++step_;
  if (opt_.audit_each_step && tri_) {
    const AuditReport report = audit(*tri_, LiftedPoints::current(sys_), opt_.params.incircle_tol);
    if (!report.ok()) {
      std::ostringstream msg;
      msg << "triangulation audit failed after step " << stats.step << ": " << report.summary();
      throw StepFailure(msg.str());
    }
  }
}

StepStats Simulation::step_long_range() {
  const auto t_start = Clock::now();
  StepStats stats;
  stats.step = step_;
  const SimParams& p = opt_.params;
  sys_.save_prev();

  const auto tf = Clock::now();
  if (opt_.forces) {
    long_range_forces(sys_, sys_.force, opt_.tile);
  } else {
    std::fill(sys_.force.begin(), sys_.force.end(), Vec2{0, 0});
  }
  stats.force_ms = ms_since(tf);

  Real dt = p.dt;
  for (std::uint64_t attempt = 0;; ++attempt) {
    integrate(sys_, sys_.force, p, dt, {opt_.seed, noise_tick(step_, attempt, p.max_rollbacks)},
              opt_.translational_noise);
    if (maintain(LiftedPoints::previous(sys_), stats)) break;
    sys_.restore_prev();
    if (++stats.rollbacks > p.max_rollbacks) {
      std::ostringstream msg;
      msg << "step " << step_ << " failed: triangulation could not follow the move after "
          << p.max_rollbacks << " rollbacks (last dt " << dt << ")";
      throw StepFailure(msg.str());
    }
    dt /= 2;
  }
  stats.dt_used = dt;
  resolve_overlaps(stats);
  stats.step_ms = ms_since(t_start);
  finish(stats);
  return stats;
}

StepStats Simulation::step_short_range() {
  const auto t_start = Clock::now();
  StepStats stats;
  stats.step = step_;
  const SimParams& p = opt_.params;
  sys_.save_prev();

  auto tm = Clock::now();
  if (verlet_needs_rebuild(*verlet_, sys_.pos, sys_.box())) rebuild_verlet(stats);
  stats.maintain_ms += ms_since(tm);

  const auto tf = Clock::now();
  if (opt_.forces) {
    short_range_forces(sys_, *verlet_, p.r_cutoff, sys_.force, opt_.accumulation);
  } else {
    std::fill(sys_.force.begin(), sys_.force.end(), Vec2{0, 0});
  }
  stats.force_ms = ms_since(tf);

  integrate(sys_, sys_.force, p, p.dt, {opt_.seed, noise_tick(step_, 0, p.max_rollbacks)},
            opt_.translational_noise);
  stats.dt_used = p.dt;

  tm = Clock::now();
  if (verlet_needs_rebuild(*verlet_, sys_.pos, sys_.box())) rebuild_verlet(stats);
  stats.maintain_ms += ms_since(tm);

  resolve_overlaps(stats);
  stats.step_ms = ms_since(t_start);
  finish(stats);
  return stats;
}

void Simulation::advance_abp(Real dt, std::uint64_t tick) {
  const auto n = static_cast<std::int64_t>(sys_.size());
  const Real rot = std::sqrt(2 * abp_.rotational_diffusion * dt);
  const Real v0 = abp_.v0;
  const bool clamp = opt_.clamp_angle_noise;
  const Real limit = opt_.params.noise_clamp;
#pragma omp parallel for num_threads(thread_count()) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const Real th = abp_.theta[i];
    sys_.displace(static_cast<std::size_t>(i), Vec2{std::cos(th), std::sin(th)} * (v0 * dt));
    RngStream rng(opt_.seed, stream_id(StreamPurpose::kRotation, static_cast<std::uint64_t>(i)),
                  tick << 8);
    Real z = static_cast<Real>(rng.normal());
    if (clamp) z = clamp_normal(z, limit);
    abp_.theta[i] = th + rot * z;
  }
  if (opt_.translational_noise) {
    std::fill(sys_.force.begin(), sys_.force.end(), Vec2{0, 0});
    integrate(sys_, sys_.force, opt_.params, dt, {opt_.seed, tick}, true);
  }
}

StepStats Simulation::abp_step() {
  const auto t_start = Clock::now();
  StepStats stats;
  stats.step = step_;
  const SimParams& p = opt_.params;
  sys_.save_prev();
  theta_prev_ = abp_.theta;

  Real dt = p.dt;
  for (std::uint64_t attempt = 0;; ++attempt) {
    advance_abp(dt, noise_tick(step_, attempt, p.max_rollbacks));
    if (!uses_triangulation()) {
      const auto tm = Clock::now();
      if (verlet_needs_rebuild(*verlet_, sys_.pos, sys_.box())) rebuild_verlet(stats);
      stats.maintain_ms += ms_since(tm);
      break;
    }
    if (maintain(LiftedPoints::previous(sys_), stats)) break;
    sys_.restore_prev();
    abp_.theta = theta_prev_;
    if (++stats.rollbacks > p.max_rollbacks) {
      std::ostringstream msg;
      msg << "step " << step_ << " failed after " << p.max_rollbacks << " rollbacks";
      throw StepFailure(msg.str());
    }
    dt /= 2;
  }
  stats.dt_used = dt;
  resolve_overlaps(stats);
  stats.step_ms = ms_since(t_start);
  finish(stats);
  return stats;
}

}  // namespace brownsim

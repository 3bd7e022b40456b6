#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "brownsim/core/params.hpp"
#include "brownsim/core/particles.hpp"
#include "brownsim/dynamics/pair_set.hpp"
#include "brownsim/forces/forces.hpp"
#include "brownsim/forces/neighbors.hpp"
#include "brownsim/triangulation/maintenance.hpp"
#include "brownsim/triangulation/periodic_triangulation.hpp"

namespace brownsim {

enum class SimMode { kLongRange, kShortRange, kAbp };

struct StepStats {
  std::size_t step = 0;
  Real dt_used = 0;
  double step_ms = 0;
  double force_ms = 0;
  double maintain_ms = 0;
  double overlap_ms = 0;
  std::size_t overlap_iterations = 0;
  std::size_t flip_passes = 0;
  std::size_t inversion_repairs = 0;
  std::size_t rollbacks = 0;
  std::size_t verlet_rebuilds = 0;
  std::size_t triangulation_rebuilds = 0;
  /// Debug scan only: overlapping pairs the neighbour provider did not offer.
  std::size_t missed_pairs = 0;
  std::vector<std::uint8_t> overlap_flags;
};

struct AbpState {
  std::vector<Real> theta;
  Real v0 = 1;
  Real rotational_diffusion = 0.01;
};

struct SimOptions {
  SimParams params;
  SimMode mode = SimMode::kLongRange;
  std::uint64_t seed = 0;
  Accumulation accumulation = Accumulation::kDeterministic;
  std::size_t tile = kDefaultTile;
  /// Free diffusion when false (no pair forces).
  bool forces = true;
  /// Translational Brownian noise; off by default for ABP.
  bool translational_noise = true;
  /// Run the O(N^2) overlap scans that fill StepStats::missed_pairs.
  bool debug_scan = false;
  /// Audit the triangulation after each step and throw on failure.
  bool audit_each_step = false;
  NeighborSource abp_neighbors = NeighborSource::kTriangulation;
  Real v0 = 1;
  /// ABP rotational diffusion; negative means params.diffusion.
  Real rotational_diffusion = -1;
  bool clamp_angle_noise = false;
};

class Simulation {
 public:
  Simulation(ParticleSystem sys, SimOptions options);

  StepStats step();
  StepStats step_long_range();
  StepStats step_short_range();
  StepStats abp_step();

  const ParticleSystem& system() const { return sys_; }
  ParticleSystem& system() { return sys_; }
  const SimOptions& options() const { return opt_; }
  const PeriodicTriangulation* triangulation() const { return tri_ ? &*tri_ : nullptr; }
  const VerletList* verlet() const { return verlet_ ? &*verlet_ : nullptr; }
  const AbpState& abp() const { return abp_; }
  AbpState& abp() { return abp_; }
  std::size_t steps_done() const { return step_; }
  Real time() const { return time_; }
  /// Pairs offered to the last overlap correction.
  const PairSet& last_pairs() const { return pairs_; }

 private:
  bool uses_triangulation() const;
  void rebuild_verlet(StepStats& stats);
  // Repairs the triangulation after a move from prev to the current positions.
  // Returns false when the move has to be undone.
  bool maintain(const LiftedPoints& prev, StepStats& stats);
  void refresh_pairs(StepStats& stats);
  void resolve_overlaps(StepStats& stats);
  void finish(StepStats& stats);
  void advance_abp(Real dt, std::uint64_t tick);

  ParticleSystem sys_;
  SimOptions opt_;
  std::optional<PeriodicTriangulation> tri_;
  std::optional<VerletList> verlet_;
  PairSet pairs_;
  AbpState abp_;
  std::vector<Real> theta_prev_;
  std::vector<Vec2> scratch_pos_;
  std::vector<IVec2> scratch_image_;
  std::size_t step_ = 0;
  Real time_ = 0;
};

}  // namespace brownsim

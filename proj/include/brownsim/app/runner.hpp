#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "brownsim/app/config.hpp"
#include "brownsim/dynamics/simulation.hpp"
#include "brownsim/metrics/report.hpp"

namespace brownsim {

using StepHook = std::function<void(const Simulation&, const StepStats&)>;

struct RunResult {
  RunReport report;
  std::optional<Summary> summary;
  ParticleSystem final_system{PeriodicBox(1), 0};
  Real final_time = 0;
  std::vector<std::uint8_t> last_flags;
};

/// Builds the initial state, steps the simulation, and (when write_outputs) writes the
/// metrics CSV, periodic and final snapshots, and the final locality flags into
/// cfg.output_dir.
RunResult run_simulation(const RunConfig& cfg, bool write_outputs = true,
                         const StepHook& hook = {}, std::ostream* log = nullptr);

struct BenchCell {
  std::string preset;
  std::string mode;
  std::size_t n = 0;
  std::size_t steps = 0;
  bool ok = false;
  std::string error;
  Summary summary;
};

struct BenchPlan {
  std::vector<std::string> presets;
  std::vector<std::size_t> n_values;
  std::size_t steps = 100;
  std::size_t warmup = 10;
  std::optional<SimMode> mode;  ///< overrides each preset's mode
  int threads = 0;
};

/// One run per (preset, N); failures become rows with the error text.
std::vector<BenchCell> run_bench(const BenchPlan& plan, std::ostream* log = nullptr);
void write_bench_csv(const std::vector<BenchCell>& cells, std::ostream& out);

}  // namespace brownsim

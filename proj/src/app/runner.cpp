#include "brownsim/app/runner.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "brownsim/app/presets.hpp"
#include "brownsim/app/snapshot.hpp"
#include "brownsim/core/parallel.hpp"
#include "brownsim/init/init.hpp"

namespace brownsim {

namespace {

std::string snapshot_name(const RunConfig& cfg, std::size_t step) {
  std::string digits = std::to_string(step);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return cfg.snapshot_prefix + "_" + digits + ".txt";
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, bool write_outputs, const StepHook& hook,
                         std::ostream* log) {
  if (auto problems = cfg.problems(); !problems.empty()) {
    std::vector<ConfigIssue> issues;
    for (auto& p : problems) issues.push_back({0, std::move(p)});
    throw ConfigParseError(std::move(issues));
  }
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  namespace fs = std::filesystem;
  if (write_outputs) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  }

  Simulation sim(init_system(cfg.init_config()), cfg.sim_options());
  RunResult result;
  result.report.config_id = cfg.id;
  result.report.n = cfg.n;
  result.report.warmup = cfg.warmup;
  if (write_outputs && cfg.snapshot_interval > 0) {
    write_snapshot(sim.system(), sim.time(), cfg.output_dir / snapshot_name(cfg, 0));
  }
  for (std::size_t s = 0; s < cfg.steps; ++s) {
    StepStats stats = sim.step();
    result.report.add(stats);
    if (hook) hook(sim, stats);
    if (write_outputs && cfg.snapshot_interval > 0 && (s + 1) % cfg.snapshot_interval == 0) {
      write_snapshot(sim.system(), sim.time(), cfg.output_dir / snapshot_name(cfg, s + 1));
    }
    if (log && (s + 1) % 100 == 0) {
      *log << cfg.id << ": step " << s + 1 << '/' << cfg.steps << '\n';
    }
    if (s + 1 == cfg.steps) result.last_flags = std::move(stats.overlap_flags);
  }
  if (cfg.warmup < result.report.rows.size()) {
    result.summary = aggregate(result.report.rows, cfg.warmup);
  }
  result.final_time = sim.time();
  result.final_system = sim.system();
  if (write_outputs) {
    write_csv(result.report, cfg.output_dir / cfg.metrics_file);
    write_snapshot(result.final_system, result.final_time,
                   cfg.output_dir / (cfg.snapshot_prefix + "_final.txt"));
    write_flags(result.last_flags, cfg.output_dir / (cfg.snapshot_prefix + "_final_locality.txt"));
  }
  return result;
}

std::vector<BenchCell> run_bench(const BenchPlan& plan, std::ostream* log) {
  std::vector<BenchCell> cells;
  for (const auto& name : plan.presets) {
    for (std::size_t n : plan.n_values) {
      BenchCell cell;
      cell.preset = name;
      cell.n = n;
      cell.steps = plan.steps;
      try {
        RunConfig cfg = load_preset(name);
        if (plan.mode) cfg.mode = *plan.mode;
        cfg.n = n;
        cfg.steps = plan.steps;
        cfg.warmup = plan.warmup;
        cfg.threads = plan.threads;
        cfg.snapshot_interval = 0;
        cell.mode = std::string(mode_name(cfg.mode));
        const RunResult r = run_simulation(cfg, false);
        if (!r.summary) throw ConfigError("no steps left after warmup");
        cell.summary = *r.summary;
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      if (log) {
        *log << "bench " << name << " N=" << n << (cell.ok ? " ok" : " FAILED: " + cell.error);
        if (cell.ok) *log << " step_ms=" << cell.summary.mean[kStepMs];
        *log << '\n';
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

void write_bench_csv(const std::vector<BenchCell>& cells, std::ostream& out) {
  out << "preset,mode,n,steps,status,mean_step_ms,mean_force_ms,mean_maintain_ms,mean_overlap_ms,"
         "mean_overlap_iters,mean_flip_passes,max_overlap_iters,median_step_ms,median_force_ms,error\n";
  for (const auto& c : cells) {
    out << c.preset << ',' << c.mode << ',' << c.n << ',' << c.steps << ',' << (c.ok ? "ok" : "error");
    if (c.ok) {
      out << ',' << format_real(c.summary.mean[kStepMs]) << ',' << format_real(c.summary.mean[kForceMs])
          << ',' << format_real(c.summary.mean[kMaintainMs]) << ','
          << format_real(c.summary.mean[kOverlapMs]) << ','
          << format_real(c.summary.mean[kOverlapIters]) << ','
          << format_real(c.summary.mean[kFlipPasses]) << ','
          << format_real(c.summary.max[kOverlapIters]) << ','
          << format_real(c.summary.median[kStepMs]) << ',' << format_real(c.summary.median[kForceMs]) << ',';
    } else {
      std::string msg = c.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
      }
      out << ",,,,,,,,,," << msg;
    }
    out << '\n';
  }
}

}  // namespace brownsim

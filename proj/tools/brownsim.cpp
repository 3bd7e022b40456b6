#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "brownsim/app/config.hpp"
#include "brownsim/app/presets.hpp"
#include "brownsim/app/render.hpp"
#include "brownsim/app/runner.hpp"
#include "brownsim/app/snapshot.hpp"
#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"

namespace {

using namespace brownsim;

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kIo = 3, kSimulation = 4 };

void print_summary(const RunResult& r) {
  std::cout << "steps: " << r.report.rows.size() << "  N: " << r.report.n
            << "  t: " << r.final_time << '\n';
  if (r.summary) {
    const Summary& s = *r.summary;
    std::cout << "mean step ms: " << s.mean[kStepMs] << "  mean overlap iters: " << s.mean[kOverlapIters]
              << "  mean flip passes: " << s.mean[kFlipPasses]
              << "  max rollbacks: " << s.max[kRollbacks] << '\n';
  }
}

std::vector<std::size_t> parse_n_range(const std::string& spec) {
  // "10:16" means powers of two 2^10..2^16; otherwise a comma list of counts.
  std::vector<std::size_t> out;
  if (const auto colon = spec.find(':'); colon != std::string::npos) {
    const int lo = std::stoi(spec.substr(0, colon));
    const int hi = std::stoi(spec.substr(colon + 1));
    if (lo < 0 || hi > 30 || lo > hi) throw ConfigError("bad --n-range " + spec);
    for (int e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  if (out.empty()) throw ConfigError("empty --n-range");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brownian dynamics of hard disks with triangulation-driven overlap correction"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a simulation from a config file or preset");
  std::string config_path, preset, out_dir;
  int threads = 0;
  bool deterministic = false, nondeterministic = false, debug_scan = false, audit = false;
  std::size_t steps = 0, n = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  run->add_option("--config", config_path, "configuration file");
  run->add_option("--preset", preset, "preset name (config file values override it)");
  run->add_option("--threads", threads, "worker threads");
  run->add_flag("--deterministic", deterministic, "fixed-order accumulation (default)");
  run->add_flag("--nondeterministic", nondeterministic, "atomic scatter accumulation");
  run->add_option("--steps", steps, "override step count");
  run->add_option("--n", n, "override particle count");
  run->add_option("--seed", seed, "override seed")->each([&](const std::string&) { seed_set = true; });
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--debug-scan", debug_scan, "O(N^2) overlap scans after each step");
  run->add_flag("--audit", audit, "audit the triangulation after each step");

  auto* abp = app.add_subcommand("abp", "run an active Brownian particle preset");
  std::string abp_preset = "abp-dense";
  Real v0 = -1;
  abp->add_option("--preset", abp_preset, "abp-dense or abp-dilute");
  abp->add_option("--steps", steps, "override step count");
  abp->add_option("--n", n, "override particle count");
  abp->add_option("--v0", v0, "self-propulsion speed");
  abp->add_option("--threads", threads, "worker threads");
  abp->add_option("--out", out_dir, "output directory");

  auto* bench = app.add_subcommand("bench", "mean step times over presets and particle counts");
  std::vector<std::string> bench_presets{"c0", "c4"};
  std::string n_range = "10:16", bench_mode, bench_out;
  std::size_t bench_steps = 100, bench_warmup = 10;
  bench->add_option("--presets", bench_presets, "preset names")->delimiter(',');
  bench->add_option("--n-range", n_range, "lo:hi powers of two, or a comma list");
  bench->add_option("--steps", bench_steps, "steps per run");
  bench->add_option("--warmup", bench_warmup, "steps excluded from the means");
  bench->add_option("--mode", bench_mode, "override mode: long-range or short-range");
  bench->add_option("--threads", threads, "worker threads");
  bench->add_option("-o,--output", bench_out, "CSV output (default stdout)");

  auto* render = app.add_subcommand("render", "render a snapshot as SVG");
  std::string snapshot_path, locality_path, svg_out;
  Real sigma = 1;
  render->add_option("--snapshot", snapshot_path, "snapshot file")->required();
  render->add_option("--locality", locality_path, "0/1 flags file for overlap locality colouring");
  render->add_option("--sigma", sigma, "particle diameter");
  render->add_option("-o,--output", svg_out, "SVG output file")->required();

  auto* show = app.add_subcommand("preset", "print a preset as a config file");
  std::string show_name;
  show->add_option("name", show_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    if (*run || *abp) {
      RunConfig cfg;
      if (*run) {
        if (config_path.empty() && preset.empty()) throw ConfigError("run needs --config or --preset");
        if (!preset.empty()) cfg = load_preset(preset);
        if (!config_path.empty()) {
          cfg = load_config_file(config_path, preset.empty() ? nullptr : &cfg);
        }
        if (nondeterministic) cfg.deterministic = false;
        if (deterministic) cfg.deterministic = true;
        if (seed_set) cfg.seed = seed;
        cfg.debug_scan = cfg.debug_scan || debug_scan;
        cfg.audit = cfg.audit || audit;
      } else {
        cfg = load_preset(abp_preset);
        if (cfg.mode != SimMode::kAbp) throw ConfigError("abp needs an abp preset");
        if (v0 >= 0) cfg.v0 = v0;
      }
      if (steps > 0) cfg.steps = steps;
      if (n > 0) cfg.n = n;
      if (threads > 0) cfg.threads = threads;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const RunResult r = run_simulation(cfg, true, {}, &std::cerr);
      print_summary(r);
      std::cout << "outputs in " << cfg.output_dir.string() << '\n';
    } else if (*bench) {
      BenchPlan plan;
      plan.presets = bench_presets;
      plan.n_values = parse_n_range(n_range);
      plan.steps = bench_steps;
      plan.warmup = bench_warmup;
      plan.threads = threads;
      if (bench_mode == "long-range") plan.mode = SimMode::kLongRange;
      else if (bench_mode == "short-range") plan.mode = SimMode::kShortRange;
      else if (!bench_mode.empty()) throw ConfigError("unknown --mode " + bench_mode);
      const auto cells = run_bench(plan, &std::cerr);
      if (bench_out.empty()) {
        write_bench_csv(cells, std::cout);
      } else {
        std::ofstream f(bench_out);
        if (!f) throw IoError("cannot open " + bench_out);
        write_bench_csv(cells, f);
      }
    } else if (*render) {
      const Snapshot snap = read_snapshot(snapshot_path);
      std::vector<std::uint8_t> flags;
      if (!locality_path.empty()) flags = read_flags(locality_path);
      RenderOptions opt;
      opt.sigma = sigma;
      opt.locality = flags;
      std::ofstream f(svg_out);
      if (!f) throw IoError("cannot open " + svg_out);
      f << render_svg(snap, opt);
      if (!f) throw IoError("failed writing " + svg_out);
    } else if (*show) {
      std::cout << to_config_text(load_preset(show_name));
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "brownsim/core/errors.hpp"
#include "brownsim/dynamics/simulation.hpp"
#include "brownsim/init/init.hpp"

namespace brownsim {

struct RunConfig {
  std::string id = "custom";
  SimMode mode = SimMode::kLongRange;
  std::size_t n = 0;
  Real rho = 0;
  Real sigma = 1;
  Real dt = 0.01;
  Real diffusion = 0.01;
  Real r_cutoff = 2.5;
  Real skin = 0.5;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::vector<ParticleType> types;

  // ABP
  Real v0 = 1;
  Real rotational_diffusion = -1;  ///< negative: same as diffusion
  NeighborSource abp_neighbors = NeighborSource::kTriangulation;
  bool clamp_angle_noise = false;

  /// Translational Brownian noise; defaults to on except in ABP mode.
  int translational_noise = -1;
  bool forces = true;

  std::size_t snapshot_interval = 0;  ///< 0: final snapshot only
  std::filesystem::path output_dir = "out";
  std::string metrics_file = "metrics.csv";
  std::string snapshot_prefix = "snapshot";
  std::size_t warmup = 10;

  bool deterministic = true;
  std::string precision = "double";
  int threads = 0;  ///< 0: OpenMP default
  bool debug_scan = false;
  bool audit = false;
  std::size_t tile = 32;
  std::size_t max_overlap_iters = 1000;
  std::size_t max_rollbacks = 10;

  Real box_length() const;
  InitConfig init_config() const;
  SimOptions sim_options() const;
  /// Cross-field problems; empty when the configuration is usable.
  std::vector<std::string> problems() const;
};

struct ConfigIssue {
  std::size_t line = 0;  ///< 0 when the problem is not tied to a line
  std::string message;
};

class ConfigParseError : public ConfigError {
 public:
  explicit ConfigParseError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses `key = value` lines (`#` starts a comment, `type = phi,alpha,mu` repeats).
/// Collects every problem before throwing ConfigParseError. When `base` is given the
/// text only overrides it and the required-key check is skipped.
RunConfig parse_config(std::string_view text, const RunConfig* base = nullptr);
RunConfig load_config_file(const std::filesystem::path& path, const RunConfig* base = nullptr);

/// Text form accepted by parse_config.
std::string to_config_text(const RunConfig& cfg);

std::string_view mode_name(SimMode mode);

}  // namespace brownsim

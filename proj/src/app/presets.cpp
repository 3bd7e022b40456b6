#include "brownsim/app/presets.hpp"

namespace brownsim {

namespace {

RunConfig mixture(std::string id, Real rho, std::vector<ParticleType> types) {
  RunConfig c;
  c.id = std::move(id);
  c.mode = SimMode::kLongRange;
  c.n = 4096;
  c.rho = rho;
  c.sigma = 1;
  c.dt = 0.01;
  c.diffusion = 0.01;
  c.seed = 1;
  c.steps = 100;
  c.types = std::move(types);
  return c;
}

RunConfig active(std::string id, Real rho) {
  RunConfig c;
  c.id = std::move(id);
  c.mode = SimMode::kAbp;
  c.n = 10000;
  c.rho = rho;
  c.sigma = 1;
  c.dt = 0.01;
  c.diffusion = 0.01;
  c.seed = 1;
  c.steps = 10000;
  c.types = {{1, 0, 0}};
  c.v0 = 1;
  c.snapshot_interval = 2500;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"c0", "c1", "c2", "c3", "c4", "abp-dense", "abp-dilute"};
}

// Force on i from k is mu_i * alpha_k * r_ik / r^3: a positive product repels.
RunConfig load_preset(std::string_view name) {
  // Type 2 is pulled towards everything while type 1 is pushed away: a chase.
  if (name == "c0") return mixture("c0", 0.25, {{0.5, 1, 0.5}, {0.5, 1, -0.5}});
  // Type 2 attracts itself into a dense cluster; type 1 stays a repulsive gas.
  if (name == "c1") return mixture("c1", 0.25, {{0.3, 1, 1}, {0.7, 1, -1}});
  // Unlike types attract, like types repel: chains.
  if (name == "c2") return mixture("c2", 0.25, {{0.5, 1, 1}, {0.5, -1, -1}});
  // Like types attract, unlike types repel: segregated clusters.
  if (name == "c3") return mixture("c3", 0.25, {{0.5, 1, -1}, {0.5, -1, 1}});
  // The signs of c2 at reduced strength in a dilute box: small, isolated clusters.
  if (name == "c4") return mixture("c4", 0.02, {{0.5, 0.3, 0.3}, {0.5, -0.3, -0.3}});
  if (name == "abp-dense") return active("abp-dense", 0.7);
  if (name == "abp-dilute") return active("abp-dilute", 0.4);
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace brownsim

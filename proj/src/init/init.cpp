#include "brownsim/init/init.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "brownsim/core/errors.hpp"

namespace brownsim {

void InitConfig::validate() const {
  if (n == 0) throw ConfigError("particle count must be at least 1");
  if (types.empty()) throw ConfigError("at least one particle type is required");
  double total = 0;
  for (const auto& t : types) {
    if (!(t.fraction >= 0)) throw ConfigError("type fractions must be non-negative");
    total += t.fraction;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("type fractions sum to " + std::to_string(total) + ", expected 1");
  }
}

std::vector<Vec2> triangular_lattice(const PeriodicBox& box, Real sigma, std::size_t n) {
  const Real L = box.length();
  const auto cols = static_cast<std::size_t>(std::floor(L / sigma));
  auto rows = static_cast<std::size_t>(std::floor(L / (sigma * std::sqrt(Real(3)) / 2)));
  // Alternate rows are offset by half a spacing, so an even row count closes the torus.
  if (rows > 1 && rows % 2 == 1) --rows;
  if (cols == 0 || rows == 0 || cols * rows < n) {
    throw ConfigError("box of length " + std::to_string(L) + " cannot hold " + std::to_string(n) +
                      " non-overlapping lattice sites of spacing " + std::to_string(sigma));
  }
  const Real spacing = L / static_cast<Real>(cols);
  const Real pitch = L / static_cast<Real>(rows);
  std::vector<Vec2> sites;
  sites.reserve(cols * rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const Real shift = (r % 2 == 1) ? spacing / 2 : 0;
    for (std::size_t c = 0; c < cols; ++c) {
      const Vec2 p{spacing / 4 + shift + spacing * static_cast<Real>(c), pitch / 4 + pitch * static_cast<Real>(r)};
      sites.push_back(box.wrap(p));
    }
  }
  return sites;
}

std::vector<std::size_t> reservoir_sample(std::size_t population, std::size_t k, RngStream& rng) {
  if (k > population) {
    throw ConfigError("cannot sample " + std::to_string(k) + " items from " + std::to_string(population));
  }
  std::vector<std::size_t> reservoir(k);
  for (std::size_t i = 0; i < k; ++i) reservoir[i] = i;
  for (std::size_t i = k; i < population; ++i) {
    const std::size_t j = rng.below(i + 1);
    if (j < k) reservoir[j] = i;
  }
  std::sort(reservoir.begin(), reservoir.end());
  return reservoir;
}

ParticleSystem init_system(const InitConfig& cfg) {
  cfg.validate();
  const auto sites = triangular_lattice(cfg.box, cfg.sigma, cfg.n);
  RngStream sample_rng(cfg.seed, stream_id(StreamPurpose::kLatticeSample, 0));
  const auto chosen = reservoir_sample(sites.size(), cfg.n, sample_rng);

  ParticleSystem sys(cfg.box, cfg.n);
  RngStream type_rng(cfg.seed, stream_id(StreamPurpose::kTypeAssignment, 0));
  for (std::size_t i = 0; i < cfg.n; ++i) {
    sys.pos[i] = sites[chosen[i]];
    const double u = type_rng.uniform();
    std::size_t t = 0;
    double cumulative = cfg.types[0].fraction;
    while (t + 1 < cfg.types.size() && u >= cumulative) {
      ++t;
      cumulative += cfg.types[t].fraction;
    }
    // Skip trailing zero-fraction types that rounding could otherwise select.
    while (t > 0 && cfg.types[t].fraction == 0) --t;
    sys.type_of[i] = static_cast<TypeIndex>(t);
    sys.alpha[i] = cfg.types[t].alpha;
    sys.mu[i] = cfg.types[t].mu;
  }
  sys.save_prev();
  return sys;
}

}  // namespace brownsim

#include "brownsim/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace brownsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_real(std::string_view s, Real& out) {
  s = trim(s);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return false;
  out = static_cast<Real>(v);
  return true;
}

template <class Int>
bool parse_uint(std::string_view s, Int& out) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) return false;
  out = static_cast<Int>(v);
  return true;
}

bool parse_bool(std::string_view s, bool& out) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
    return true;
  }
  return false;
}

std::string fmt(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(v));
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view mode_name(SimMode mode) {
  switch (mode) {
    case SimMode::kLongRange:
      return "long-range";
    case SimMode::kShortRange:
      return "short-range";
    case SimMode::kAbp:
      return "abp";
  }
  return "?";
}

ConfigParseError::ConfigParseError(std::vector<ConfigIssue> issues)
    : ConfigError([&] {
        std::ostringstream msg;
        msg << "invalid configuration:";
        for (const auto& i : issues) {
          msg << "\n  ";
          if (i.line > 0) msg << "line " << i.line << ": ";
          msg << i.message;
        }
        return msg.str();
      }()),
      issues_(std::move(issues)) {}

Real RunConfig::box_length() const { return box_length_for_density(n, sigma, rho); }

InitConfig RunConfig::init_config() const {
  InitConfig c;
  c.n = n;
  c.box = PeriodicBox(box_length());
  c.sigma = sigma;
  c.types = types;
  c.seed = seed;
  return c;
}

SimOptions RunConfig::sim_options() const {
  SimOptions o;
  o.params.n = n;
  o.params.sigma = sigma;
  o.params.dt = dt;
  o.params.diffusion = diffusion;
  o.params.r_cutoff = r_cutoff;
  o.params.skin = skin;
  o.params.max_overlap_iters = max_overlap_iters;
  o.params.max_rollbacks = max_rollbacks;
  o.mode = mode;
  o.seed = seed;
  o.accumulation = deterministic ? Accumulation::kDeterministic : Accumulation::kAtomic;
  o.tile = tile;
  o.forces = forces;
  o.translational_noise = translational_noise < 0 ? mode != SimMode::kAbp : translational_noise != 0;
  o.debug_scan = debug_scan;
  o.audit_each_step = audit;
  o.abp_neighbors = abp_neighbors;
  o.v0 = v0;
  o.rotational_diffusion = rotational_diffusion;
  o.clamp_angle_noise = clamp_angle_noise;
  return o;
}

std::vector<std::string> RunConfig::problems() const {
  std::vector<std::string> out;
  if (n == 0) out.push_back("n must be at least 1");
  if (!(rho > 0 && rho < kHexagonalPacking)) {
    out.push_back("rho = " + fmt(rho) + " is outside (0, 0.9069), the hexagonal packing bound");
  }
  if (!(sigma > 0)) out.push_back("sigma must be positive");
  if (!(dt > 0)) out.push_back("dt must be positive");
  if (!(diffusion >= 0)) out.push_back("diffusion must be non-negative");
  if (!(skin > 0)) out.push_back("skin must be positive");
  if (mode == SimMode::kShortRange && !(r_cutoff > sigma)) {
    out.push_back("r_cutoff must exceed sigma in short-range mode");
  }
  if (steps == 0) out.push_back("steps must be at least 1");
  if (types.empty()) out.push_back("at least one type line is required");
  Real total = 0;
  for (const auto& t : types) {
    if (t.fraction < 0) out.push_back("type fractions must be non-negative");
    total += t.fraction;
  }
  if (!types.empty() && std::abs(total - 1) > 1e-12) {
    out.push_back("type fractions sum to " + fmt(total) + ", expected 1");
  }
  if (mode == SimMode::kAbp && !(v0 >= 0)) out.push_back("v0 must be non-negative");
  if (tile == 0) out.push_back("tile must be at least 1");
  if (threads < 0) out.push_back("threads must be non-negative");
#ifdef BROWNSIM_SINGLE_PRECISION
  if (precision != "single") out.push_back("precision = " + precision + " but this build uses single precision");
#else
  if (precision != "double") out.push_back("precision = " + precision + " but this build uses double precision");
#endif
  return out;
}

RunConfig parse_config(std::string_view text, const RunConfig* base) {
  RunConfig cfg = base ? *base : RunConfig{};
  std::vector<ConfigIssue> issues;
  std::map<std::string, std::size_t> seen;
  bool types_reset = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({line_no, "expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto bad = [&](const std::string& what) {
      issues.push_back({line_no, "invalid value '" + std::string(value) + "' for " + key + ": " + what});
    };
    if (key != "type") {
      if (auto it = seen.find(key); it != seen.end()) {
        issues.push_back({line_no, "duplicate key '" + key + "' (first on line " +
                                       std::to_string(it->second) + ")"});
        continue;
      }
      seen[key] = line_no;
    }

    if (key == "mode") {
      if (value == "long-range") cfg.mode = SimMode::kLongRange;
      else if (value == "short-range") cfg.mode = SimMode::kShortRange;
      else if (value == "abp") cfg.mode = SimMode::kAbp;
      else bad("expected long-range, short-range or abp");
    } else if (key == "id" || key == "name") {
      cfg.id = std::string(value);
    } else if (key == "n") {
      if (!parse_uint(value, cfg.n)) bad("expected a non-negative integer");
    } else if (key == "rho") {
      if (!parse_real(value, cfg.rho)) bad("expected a number");
    } else if (key == "sigma") {
      if (!parse_real(value, cfg.sigma)) bad("expected a number");
    } else if (key == "dt") {
      if (!parse_real(value, cfg.dt)) bad("expected a number");
    } else if (key == "diffusion") {
      if (!parse_real(value, cfg.diffusion)) bad("expected a number");
    } else if (key == "r_cutoff") {
      if (!parse_real(value, cfg.r_cutoff)) bad("expected a number");
    } else if (key == "skin") {
      if (!parse_real(value, cfg.skin)) bad("expected a number");
    } else if (key == "seed") {
      if (!parse_uint(value, cfg.seed)) bad("expected a non-negative integer");
    } else if (key == "steps") {
      if (!parse_uint(value, cfg.steps)) bad("expected a non-negative integer");
    } else if (key == "type") {
      if (!types_reset) {
        cfg.types.clear();
        types_reset = true;
      }
      ParticleType t;
      std::vector<std::string_view> parts;
      std::size_t s = 0;
      for (;;) {
        const auto c = value.find(',', s);
        parts.push_back(value.substr(s, c == std::string_view::npos ? value.npos : c - s));
        if (c == std::string_view::npos) break;
        s = c + 1;
      }
      if (parts.size() != 3 || !parse_real(parts[0], t.fraction) || !parse_real(parts[1], t.alpha) ||
          !parse_real(parts[2], t.mu)) {
        bad("expected phi,alpha,mu");
      } else {
        cfg.types.push_back(t);
      }
    } else if (key == "v0") {
      if (!parse_real(value, cfg.v0)) bad("expected a number");
    } else if (key == "rotational_diffusion") {
      if (!parse_real(value, cfg.rotational_diffusion)) bad("expected a number");
    } else if (key == "abp_neighbors") {
      if (value == "triangulation") cfg.abp_neighbors = NeighborSource::kTriangulation;
      else if (value == "verlet") cfg.abp_neighbors = NeighborSource::kVerlet;
      else bad("expected triangulation or verlet");
    } else if (key == "clamp_angle_noise") {
      if (!parse_bool(value, cfg.clamp_angle_noise)) bad("expected true or false");
    } else if (key == "translational_noise") {
      bool b = false;
      if (!parse_bool(value, b)) bad("expected true or false");
      else cfg.translational_noise = b ? 1 : 0;
    } else if (key == "forces") {
      if (!parse_bool(value, cfg.forces)) bad("expected true or false");
    } else if (key == "snapshot_interval") {
      if (!parse_uint(value, cfg.snapshot_interval)) bad("expected a non-negative integer");
    } else if (key == "output_dir") {
      cfg.output_dir = std::string(value);
    } else if (key == "metrics_file") {
      cfg.metrics_file = std::string(value);
    } else if (key == "snapshot_prefix") {
      cfg.snapshot_prefix = std::string(value);
    } else if (key == "warmup") {
      if (!parse_uint(value, cfg.warmup)) bad("expected a non-negative integer");
    } else if (key == "deterministic") {
      if (!parse_bool(value, cfg.deterministic)) bad("expected true or false");
    } else if (key == "precision") {
      if (value != "double" && value != "single") bad("expected double or single");
      else cfg.precision = std::string(value);
    } else if (key == "threads") {
      if (!parse_uint(value, cfg.threads)) bad("expected a non-negative integer");
    } else if (key == "debug_scan") {
      if (!parse_bool(value, cfg.debug_scan)) bad("expected true or false");
    } else if (key == "audit") {
      if (!parse_bool(value, cfg.audit)) bad("expected true or false");
    } else if (key == "tile") {
      if (!parse_uint(value, cfg.tile)) bad("expected a positive integer");
    } else if (key == "max_overlap_iters") {
      if (!parse_uint(value, cfg.max_overlap_iters)) bad("expected a positive integer");
    } else if (key == "max_rollbacks") {
      if (!parse_uint(value, cfg.max_rollbacks)) bad("expected a non-negative integer");
    } else {
      issues.push_back({line_no, "unknown key '" + key + "'"});
    }
    if (end == text.size()) break;
  }

  if (!base) {
    for (const char* required : {"mode", "n", "rho", "dt", "diffusion", "seed", "steps"}) {
      if (!seen.count(required)) issues.push_back({0, std::string("missing required key '") + required + "'"});
    }
  }
  for (auto& p : cfg.problems()) {
    // Problems start with the offending key; point at its line, and skip keys already
    // reported as missing.
    const std::string word = p.substr(0, p.find(' '));
    const auto it = seen.find(word);
    if (it == seen.end() && !base &&
        std::any_of(issues.begin(), issues.end(), [&](const ConfigIssue& i) {
          return i.message == "missing required key '" + word + "'";
        })) {
      continue;
    }
    std::size_t line = it == seen.end() ? 0 : it->second;
    if (word == "type" && !cfg.types.empty()) line = 0;
    issues.push_back({line, std::move(p)});
  }
  if (!issues.empty()) throw ConfigParseError(std::move(issues));
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path, const RunConfig* base) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), base);
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream o;
  o << "id = " << c.id << '\n';
  o << "mode = " << mode_name(c.mode) << '\n';
  o << "n = " << c.n << '\n';
  o << "rho = " << fmt(c.rho) << '\n';
  o << "sigma = " << fmt(c.sigma) << '\n';
  o << "dt = " << fmt(c.dt) << '\n';
  o << "diffusion = " << fmt(c.diffusion) << '\n';
  o << "r_cutoff = " << fmt(c.r_cutoff) << '\n';
  o << "skin = " << fmt(c.skin) << '\n';
  o << "seed = " << c.seed << '\n';
  o << "steps = " << c.steps << '\n';
  for (const auto& t : c.types) {
    o << "type = " << fmt(t.fraction) << ',' << fmt(t.alpha) << ',' << fmt(t.mu) << '\n';
  }
  if (c.mode == SimMode::kAbp) {
    o << "v0 = " << fmt(c.v0) << '\n';
    if (c.rotational_diffusion >= 0) o << "rotational_diffusion = " << fmt(c.rotational_diffusion) << '\n';
    o << "abp_neighbors = "
      << (c.abp_neighbors == NeighborSource::kTriangulation ? "triangulation" : "verlet") << '\n';
  }
  if (c.translational_noise >= 0) {
    o << "translational_noise = " << (c.translational_noise ? "true" : "false") << '\n';
  }
  if (!c.forces) o << "forces = false\n";
  o << "snapshot_interval = " << c.snapshot_interval << '\n';
  o << "warmup = " << c.warmup << '\n';
  o << "deterministic = " << (c.deterministic ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace brownsim

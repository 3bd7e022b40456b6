// Acceptance checks. Prints one PASS/FAIL line per criterion; pass criterion numbers as
// arguments to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "brownsim/app/config.hpp"
#include "brownsim/app/presets.hpp"
#include "brownsim/app/runner.hpp"
#include "brownsim/core/errors.hpp"
#include "brownsim/core/parallel.hpp"
#include "brownsim/core/rng.hpp"
#include "brownsim/dynamics/integrate.hpp"
#include "brownsim/dynamics/overlap.hpp"
#include "brownsim/dynamics/simulation.hpp"
#include "brownsim/forces/forces.hpp"
#include "brownsim/forces/neighbors.hpp"
#include "brownsim/init/init.hpp"
#include "brownsim/metrics/clusters.hpp"
#include "brownsim/metrics/report.hpp"
#include "brownsim/triangulation/build.hpp"
#include "brownsim/triangulation/maintenance.hpp"

using namespace brownsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += " [failed: " + what + "]";
    }
  }
};

double fold(double d, double L) { return d - L * std::round(d / L); }

double pair_distance(Vec2 a, Vec2 b, double L) {
  return std::hypot(fold(double(b.x) - a.x, L), fold(double(b.y) - a.y, L));
}

// O(N^2) count of pairs closer than the threshold, using its own minimum image.
std::size_t oracle_overlaps(const ParticleSystem& sys, double threshold) {
  const double L = sys.box().length();
  std::size_t count = 0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = i + 1; j < sys.size(); ++j) {
      if (pair_distance(sys.pos[i], sys.pos[j], L) < threshold) ++count;
    }
  }
  return count;
}

ParticleSystem random_system(std::size_t n, Real L, std::uint64_t seed) {
  ParticleSystem sys(PeriodicBox(L), n);
  RngStream rng(seed, stream_id(StreamPurpose::kTest, 99));
  for (std::size_t i = 0; i < n; ++i) {
    sys.pos[i] = {Real(rng.uniform() * L), Real(rng.uniform() * L)};
    sys.alpha[i] = rng.uniform() < 0.5 ? 1 : -1;
    sys.mu[i] = Real(rng.uniform() * 2 - 1);
  }
  return sys;
}

double clamped_second_moment() {
  const int m = 20000;
  const double a = -3, b = 3, h = (b - a) / m;
  auto f = [](double z) { return z * z * std::exp(-z * z / 2) / std::sqrt(2 * std::numbers::pi); };
  double s = f(a) + f(b);
  for (int k = 1; k < m; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3 + 9 * std::erfc(3 / std::sqrt(2.0));
}

RunConfig preset_at(const std::string& name, std::size_t n, std::size_t steps) {
  RunConfig cfg = load_preset(name);
  cfg.n = n;
  cfg.steps = steps;
  cfg.snapshot_interval = 0;
  return cfg;
}

Triangle tri_of(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Triangle t;
  t.v = {a, b, c};
  return t;
}

constexpr Real kPatchBox = 1000;

LiftedPoints plane(const std::vector<Vec2>& p) { return {p, {}, kPatchBox}; }

bool all_positive(const PeriodicTriangulation& tri, const std::vector<Vec2>& p) {
  for (std::size_t t = 0; t < tri.triangle_count(); ++t) {
    const auto& v = tri.triangle(t).v;
    const Vec2 a = p[v[0]], b = p[v[1]], c = p[v[2]];
    if (!((double(b.x) - a.x) * (double(c.y) - a.y) - (double(b.y) - a.y) * (double(c.x) - a.x) > 0)) {
      return false;
    }
  }
  return true;
}

bool has_edge(const PeriodicTriangulation& tri, std::uint32_t a, std::uint32_t b) {
  for (std::size_t e = 0; e < tri.edge_count(); ++e) {
    const auto [x, y] = tri.endpoints(e);
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

Outcome excluded_volume_and_locality(Outcome& locality) {
  Outcome out;
  std::size_t runs = 0, violations = 0, missed = 0;
  for (const auto& name : preset_names()) {
    for (std::size_t n : {1024u, 4096u}) {
      RunConfig cfg = preset_at(name, n, 100);
      cfg.debug_scan = true;
      const double threshold = cfg.sigma * (1 - 1e-9);
      std::size_t v = 0, m = 0;
      run_simulation(cfg, false, [&](const Simulation& sim, const StepStats& st) {
        v += oracle_overlaps(sim.system(), threshold);
        m += st.missed_pairs;
      });
      ++runs;
      violations += v;
      missed += m;
      out.require(v == 0, name + " N=" + std::to_string(n) + " has " + std::to_string(v) + " overlaps");
      locality.require(m == 0, name + " N=" + std::to_string(n) + " missed " + std::to_string(m));
    }
  }
  out.detail << runs << " runs x 100 steps, overlapping pairs after steps: " << violations;
  locality.detail << runs << " runs x 100 steps, overlaps outside the neighbour pairs: " << missed;
  return out;
}

using EdgeKey = std::tuple<std::uint32_t, std::uint32_t, long long, long long>;

std::map<EdgeKey, std::size_t> keyed_edges(const PeriodicTriangulation& tri, const LiftedPoints& pts) {
  std::map<EdgeKey, std::size_t> keys;
  for (std::size_t e = 0; e < tri.edge_count(); ++e) {
    auto [a, b] = tri.endpoints(e);
    Vec2 d = tri.edge_vector(pts, e);
    if (a > b) {
      std::swap(a, b);
      d = -d;
    }
    keys[{a, b, std::llround(d.x * 1e6), std::llround(d.y * 1e6)}] = e;
  }
  return keys;
}

// Relative in-circle determinant of the quadrilateral around edge e.
double cocircularity(const PeriodicTriangulation& tri, const LiftedPoints& pts, std::size_t e) {
  const Quad q = tri.quad(pts, e);
  const double ax = q.c.x - q.d.x, ay = q.c.y - q.d.y;
  const double bx = q.a.x - q.d.x, by = q.a.y - q.d.y;
  const double cx = q.b.x - q.d.x, cy = q.b.y - q.d.y;
  const double det = (ax * ax + ay * ay) * (bx * cy - by * cx) - (bx * bx + by * by) * (ax * cy - ay * cx) +
                     (cx * cx + cy * cy) * (ax * by - ay * bx);
  const double s = std::max({std::abs(ax), std::abs(ay), std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy)});
  return std::abs(det) / (s * s * s * s);
}

Outcome delaunay_maintenance() {
  Outcome out;
  RunConfig cfg = preset_at("c0", 1024, 100);
  std::size_t failed_audits = 0, compared = 0, differing = 0, non_cocircular = 0;
  std::string first_problem;
  run_simulation(cfg, false, [&](const Simulation& sim, const StepStats& st) {
    const auto& tri = *sim.triangulation();
    const auto pts = LiftedPoints::current(sim.system());
    const AuditReport rep = audit(tri, pts);
    const std::size_t v = rep.vertices;
    const bool good = rep.ok() && rep.incircle_violations == 0 && rep.edges == 3 * v && rep.triangles == 2 * v &&
                      rep.nonpositive_triangles == 0;
    if (!good) {
      ++failed_audits;
      if (first_problem.empty()) first_problem = rep.summary();
    }
    if ((st.step + 1) % 10 != 0) return;
    ++compared;
    const auto fresh = build_initial(pts);
    const auto kept = keyed_edges(tri, pts);
    const auto rebuilt = keyed_edges(fresh, pts);
    for (const auto& [key, e] : kept) {
      if (rebuilt.count(key)) continue;
      ++differing;
      if (cocircularity(tri, pts, e) > 1e-9) ++non_cocircular;
    }
    for (const auto& [key, e] : rebuilt) {
      if (kept.count(key)) continue;
      ++differing;
      if (cocircularity(fresh, pts, e) > 1e-9) ++non_cocircular;
    }
  });
  out.require(failed_audits == 0, std::to_string(failed_audits) + " audits failed: " + first_problem);
  out.require(compared == 10, "expected 10 rebuild comparisons");
  out.require(non_cocircular == 0, std::to_string(non_cocircular) + " differing edges are not cocircular");
  out.detail << "c0 N=1024: 100 audits clean, " << compared << " rebuild comparisons, " << differing
             << " differing edges (all on cocircular quadrilaterals)";
  return out;
}

Outcome force_kernels() {
  Outcome out;
  const auto sys = random_system(512, 20, 4);
  const double L = 20;
  std::vector<Vec2> same_order(512), reference(512);
  for (std::size_t i = 0; i < 512; ++i) {
    double fx = 0, fy = 0;
    Real sx = 0, sy = 0;
    for (std::size_t k = 0; k < 512; ++k) {
      if (k == i) continue;
      const double dx = fold(double(sys.pos[i].x) - sys.pos[k].x, L);
      const double dy = fold(double(sys.pos[i].y) - sys.pos[k].y, L);
      const double r = std::hypot(dx, dy);
      fx += sys.mu[i] * sys.alpha[k] * dx / std::pow(r, 3);
      fy += sys.mu[i] * sys.alpha[k] * dy / std::pow(r, 3);
      const Real r2 = Real(dx * dx + dy * dy);
      const Real s = sys.mu[i] * sys.alpha[k] / (r2 * std::sqrt(r2));
      sx += Real(dx) * s;
      sy += Real(dy) * s;
    }
    reference[i] = {Real(fx), Real(fy)};
    same_order[i] = {sx, sy};
  }
  double worst = 0;
  bool exact = true;
  for (std::size_t tile : {1u, 32u, 100u, 512u}) {
    std::vector<Vec2> f(512);
    long_range_forces(sys, f, tile);
    for (std::size_t i = 0; i < 512; ++i) {
      for (int c = 0; c < 2; ++c) {
        const double got = c ? f[i].y : f[i].x, want = c ? reference[i].y : reference[i].x;
        worst = std::max(worst, std::abs(got - want) / std::max(std::abs(want), 1e-300));
      }
      exact = exact && f[i].x == same_order[i].x && f[i].y == same_order[i].y;
    }
  }
  out.require(worst <= 1e-12, "long-range relative error " + std::to_string(worst));
  out.require(exact, "deterministic kernel differs from the fixed-order loop");

  std::size_t states = 0, mismatched = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_system(1024, 40, 100 + seed);
    const Real r_list = 3.0;
    std::set<std::pair<std::uint32_t, std::uint32_t>> brute;
    for (std::uint32_t i = 0; i < 1024; ++i) {
      for (std::uint32_t j = i + 1; j < 1024; ++j) {
        if (pair_distance(s.pos[i], s.pos[j], 40) <= r_list) brute.insert({i, j});
      }
    }
    const auto list = build_verlet(s.pos, s.box(), r_list, 0.5).pairs();
    if (std::set(list.begin(), list.end()) != brute || list.size() != brute.size()) ++mismatched;
    ++states;
  }
  out.require(mismatched == 0, std::to_string(mismatched) + " Verlet pair sets differ");
  out.detail << "N=512 max relative error " << worst << ", bitwise equal to the fixed-order loop; "
             << states << " Verlet states at N=1024 identical to the brute-force scan";
  return out;
}

Outcome isolated_bounce() {
  Outcome out;
  SimParams p;
  RngStream rng(5, stream_id(StreamPurpose::kTest, 5));
  double worst = 0;
  std::size_t cases = 0;
  // The closed form holds while the quarter-diameter displacement cap is inactive.
  for (Real r : {0.75, 0.8, 0.85, 0.9, 0.95, 0.99, 0.999999}) {
    for (int k = 0; k < 20; ++k) {
      const double angle = rng.uniform() * 2 * std::numbers::pi;
      ParticleSystem sys(PeriodicBox(10), 2);
      sys.pos[0] = {Real(rng.uniform() * 10), Real(rng.uniform() * 10)};
      sys.pos[1] = sys.box().wrap(sys.pos[0] + Vec2{Real(r * std::cos(angle)), Real(r * std::sin(angle))});
      const double r0 = pair_distance(sys.pos[0], sys.pos[1], 10);
      std::vector<std::uint8_t> flags;
      const std::size_t it = correct_overlaps(sys, PairSet(2, {{0, 1}}), p, flags);
      const double r1 = pair_distance(sys.pos[0], sys.pos[1], 10);
      worst = std::max(worst, std::abs(r1 - (2 - r0)));
      out.require(it == 1, "pair needed " + std::to_string(it) + " iterations");
      ++cases;
    }
  }
  out.require(worst <= 1e-12, "separation error " + std::to_string(worst));
  out.detail << cases << " pairs with r in [0.75, 1): one iteration each, max |r' - (2 sigma - r)| = " << worst;
  return out;
}

Outcome noise_statistics() {
  Outcome out;
  const double oracle = clamped_second_moment();
  RngStream rng(77, stream_id(StreamPurpose::kTest, 77));
  const int draws = 1000000;
  double sum2 = 0;
  for (int k = 0; k < draws; ++k) {
    const double z = clamped_gaussian(rng);
    sum2 += z * z;
  }
  const double moment = sum2 / draws;
  out.require(std::abs(oracle - 0.99499) < 1e-4, "quadrature oracle " + std::to_string(oracle));
  out.require(std::abs(moment / oracle - 1) <= 0.01, "second moment " + std::to_string(moment));

  const std::size_t n = 10000, steps = 1000, every = 50;
  ParticleSystem sys(PeriodicBox(100), n);
  SimParams p;
  const std::vector<Vec2> zero(n, Vec2{0, 0});
  std::vector<Vec2> start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = sys.lifted(i);
  std::vector<double> ts, msd;
  for (std::uint64_t s = 0; s < steps; ++s) {
    integrate(sys, zero, p, p.dt, {31, noise_tick(s, 0, p.max_rollbacks)});
    if ((s + 1) % every == 0) {
      double m = 0;
      for (std::size_t i = 0; i < n; ++i) m += norm2(sys.lifted(i) - start[i]);
      ts.push_back(double(s + 1) * p.dt);
      msd.push_back(m / n);
    }
  }
  double stt = 0, sty = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    stt += ts[k] * ts[k];
    sty += ts[k] * msd[k];
  }
  const double slope = sty / stt;
  const double expect = 2 * 0.99499 * p.diffusion;
  out.require(std::abs(slope / expect - 1) <= 0.02, "MSD slope " + std::to_string(slope));
  out.detail << "second moment " << moment << " (oracle " << oracle << "); MSD slope " << slope << " vs "
             << expect;
  return out;
}

Outcome scaling_shapes() {
  Outcome out;
  std::vector<std::size_t> ns;
  for (int k = 10; k <= 16; ++k) ns.push_back(std::size_t(1) << k);
  const auto bench = [&](SimMode mode) {
    BenchPlan plan;
    plan.presets = {"c0"};
    plan.n_values = ns;
    plan.steps = 100;
    plan.mode = mode;
    return run_bench(plan, &std::cerr);
  };
  const auto lr = bench(SimMode::kLongRange);
  // Every long-range step does the same work, so the median keeps stray scheduling noise
  // out of the short small-N runs.
  out.detail << "long-range median force ratios:";
  for (std::size_t k = 0; k + 1 < lr.size(); ++k) {
    out.require(lr[k].ok && lr[k + 1].ok, "bench run failed: " + lr[k].error + lr[k + 1].error);
    const double ratio = lr[k + 1].summary.median[kForceMs] / lr[k].summary.median[kForceMs];
    out.detail << ' ' << std::round(ratio * 100) / 100;
    out.require(ratio >= 3.2 && ratio <= 4.8, "force ratio at N=" + std::to_string(lr[k].n));
  }
  const auto sr = bench(SimMode::kShortRange);
  out.detail << "; short-range mean step ratios:";
  for (std::size_t k = 0; k + 1 < sr.size(); ++k) {
    out.require(sr[k].ok && sr[k + 1].ok, "bench run failed: " + sr[k].error + sr[k + 1].error);
    const double ratio = sr[k + 1].summary.mean[kStepMs] / sr[k].summary.mean[kStepMs];
    out.detail << ' ' << std::round(ratio * 100) / 100;
    if (sr[k].n >= (1u << 14)) {
      out.require(ratio >= 1.6 && ratio <= 2.6, "step ratio at N=" + std::to_string(sr[k].n));
    }
  }
  out.detail << " (checked from N=16384)";
  return out;
}

Outcome complexity_ordering() {
  Outcome out;
  BenchPlan plan;
  plan.presets = {"c4", "c1", "c2", "c0", "c3"};
  plan.n_values = {4096};
  plan.steps = 100;
  std::map<std::string, double> mean;
  for (const auto& cell : run_bench(plan, &std::cerr)) {
    out.require(cell.ok, cell.preset + " failed: " + cell.error);
    mean[cell.preset] = cell.summary.mean[kOverlapIters];
  }
  out.detail << "mean overlap iterations:";
  for (const auto& name : plan.presets) out.detail << ' ' << name << '=' << mean[name];
  out.require(mean["c4"] <= mean["c0"] && mean["c0"] <= mean["c3"], "c4 <= c0 <= c3");
  out.require(std::abs(mean["c4"] - 1) <= 0.5, "c4 not close to one iteration");
  return out;
}

Outcome abp_phenomenology() {
  Outcome out;
  const auto clusters_at = [](const std::string& name, std::vector<std::size_t> marks) {
    RunConfig cfg = load_preset(name);
    cfg.steps = 10000;
    cfg.snapshot_interval = 0;
    std::vector<ClusterStats> found;
    run_simulation(cfg, false, [&](const Simulation& sim, const StepStats& st) {
      if (std::find(marks.begin(), marks.end(), st.step + 1) == marks.end()) return;
      found.push_back(contact_clusters(sim.system().pos, sim.system().box(), 1.1 * cfg.sigma));
    });
    return found;
  };
  const auto dense = clusters_at("abp-dense", {10000});
  const auto dilute = clusters_at("abp-dilute", {2500, 10000});
  out.require(dense.size() == 1 && dilute.size() == 2, "missing cluster samples");
  if (!out.pass) return out;
  out.require(dense[0].largest_fraction >= 0.5, "dense largest cluster below half");
  out.require(dilute[1].weighted_mean_size > dilute[0].weighted_mean_size, "dilute clusters did not coarsen");
  out.detail << "abp-dense largest cluster " << dense[0].largest_fraction << " of N; abp-dilute mean cluster size "
             << dilute[0].weighted_mean_size << " -> " << dilute[1].weighted_mean_size
             << " (number mean " << dilute[0].mean_size << " -> " << dilute[1].mean_size << ")";
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Metric rows without the wall-clock columns.
std::vector<std::string> counter_columns(const fs::path& csv) {
  const ParsedCsv parsed = read_csv(csv);
  std::vector<std::string> rows;
  for (const auto& r : parsed.rows) {
    std::ostringstream line;
    line << r.step;
    for (std::size_t c : {kDtUsed, kOverlapIters, kFlipPasses, kInversionRepairs, kRollbacks}) {
      line << ',' << format_real(r.values[c]);
    }
    rows.push_back(line.str());
  }
  return rows;
}

Outcome determinism() {
  Outcome out;
  const int saved = thread_count();
  std::size_t files = 0;
  for (const std::string name : {"c0", "abp-dilute"}) {
    std::vector<fs::path> dirs;
    for (int threads : {1, 4}) {
      RunConfig cfg = preset_at(name, 1024, 100);
      cfg.snapshot_interval = 25;
      cfg.threads = threads;
      cfg.deterministic = true;
      cfg.output_dir = fs::temp_directory_path() / ("brownsim_accept_" + name + "_" + std::to_string(threads));
      fs::remove_all(cfg.output_dir);
      run_simulation(cfg, true);
      dirs.push_back(cfg.output_dir);
    }
    for (const char* f : {"snapshot_000025.txt", "snapshot_000050.txt", "snapshot_000100.txt", "snapshot_final.txt",
                          "snapshot_final_locality.txt"}) {
      const auto a = read_file(dirs[0] / f), b = read_file(dirs[1] / f);
      out.require(!a.empty() && a == b, name + " " + f + " differs");
      ++files;
    }
    out.require(counter_columns(dirs[0] / "metrics.csv") == counter_columns(dirs[1] / "metrics.csv"),
                name + " metric counters differ");
    for (const auto& d : dirs) fs::remove_all(d);
  }
  set_thread_count(saved);
  out.detail << files << " snapshot/flag files and the metric counters identical with 1 and 4 threads (c0, abp-dilute)";
  return out;
}

Outcome inversion_repair() {
  Outcome out;
  // Single crossing: vertex 3 goes through edge (0, 1).
  {
    std::vector<Vec2> p{{0, 0}, {4, 0}, {2, 3}, {2, -1}};
    auto tri = PeriodicTriangulation::from_triangles(4, kPatchBox, {tri_of(0, 1, 2), tri_of(1, 0, 3)});
    const auto prev_pos = p;
    p[3] = {2, 1};
    const auto prev = plane(prev_pos);
    const auto r = repair_inversions(tri, plane(p), 10, &prev);
    out.require(!r.needs_rollback && r.flips == 1 && r.passes == 1, "single crossing not fixed by one flip");
    out.require(has_edge(tri, 2, 3) && all_positive(tri, p), "single crossing leaves a bad triangle");
    out.detail << "single crossing: " << r.flips << " flip; ";
  }
  // Double crossing: f goes through (b, e) and then (c, e) into (e, c, d).
  {
    enum : std::uint32_t { e, f, b, c, d };
    auto at = [](double deg, double rad) {
      const double a = deg * std::numbers::pi / 180;
      return Vec2{Real(rad * std::cos(a)), Real(rad * std::sin(a))};
    };
    std::vector<Vec2> p{{0, 0}, at(-30, 1), at(40, 1), at(100, 0.4), at(150, 1)};
    auto tri = PeriodicTriangulation::from_triangles(5, kPatchBox, {tri_of(e, f, b), tri_of(e, b, c), tri_of(e, c, d)});
    out.require(all_positive(tri, p), "double-crossing start is not valid");
    const auto prev_pos = p;
    p[f] = {-0.3, 0.2};
    const auto prev = plane(prev_pos);
    const auto r = repair_inversions(tri, plane(p), 10, &prev);
    out.require(!r.needs_rollback && r.flips == 2 && r.passes == 2, "double crossing not fixed by two flips");
    out.require(has_edge(tri, c, f) && has_edge(tri, d, f) && all_positive(tri, p),
                "double crossing leaves a bad triangle");
    out.detail << "double crossing: " << r.flips << " flips in " << r.passes << " passes; ";
  }
  // Restoring a saved state is bitwise.
  {
    InitConfig ic;
    ic.n = 256;
    ic.box = PeriodicBox(box_length_for_density(256, 1, 0.6));
    ic.types = {{0.5, 1, 1}, {0.5, -1, -1}};
    ic.seed = 2;
    ParticleSystem sys = init_system(ic);
    const auto pos0 = sys.pos;
    const auto img0 = sys.image;
    sys.save_prev();
    SimParams p;
    p.dt = 10;
    std::vector<Vec2> f(sys.size());
    long_range_forces(sys, f);
    integrate(sys, f, p, p.dt, {2, 0});
    out.require(sys.pos != pos0, "pathological step did not move anything");
    sys.restore_prev();
    out.require(sys.pos == pos0 && sys.image == img0, "restore is not bitwise");

    SimOptions o;
    o.params.dt = 10;
    o.seed = 2;
    o.audit_each_step = true;
    Simulation sim(init_system(ic), o);
    std::size_t rollbacks = 0;
    for (int s = 0; s < 3; ++s) {
      const auto st = sim.step();
      rollbacks += st.rollbacks;
      out.require(st.dt_used == 10 / std::ldexp(1.0, int(st.rollbacks)), "dt not halved per rollback");
    }
    out.require(rollbacks >= 1, "no rollback at dt = 10");
    out.require(oracle_overlaps(sim.system(), 1 - 1e-9) == 0, "overlaps after rollbacks");
    out.require(audit(*sim.triangulation(), LiftedPoints::current(sim.system())).ok(), "audit after rollbacks");
    out.detail << "dt = 10 caused " << rollbacks << " rollbacks with bitwise restore";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));
  const auto wanted = [&](int k) { return only.empty() || only.count(k); };

  std::map<int, Outcome> results;
  const auto run = [&](int k, const std::function<Outcome()>& check) {
    if (!wanted(k)) return;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results[k] = check();
    } catch (const std::exception& e) {
      results[k].pass = false;
      results[k].detail << "exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const Outcome& o = results[k];
    std::printf("criterion %2d: %s  %s%s (%.0f s)\n", k, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                o.failures.c_str(), s);
    std::fflush(stdout);
  };

  // Criteria 1 and 3 share their runs.
  std::optional<Outcome> volume, locality;
  const auto shared_runs = [&] {
    if (volume) return;
    volume.emplace();
    locality.emplace();
    *volume = excluded_volume_and_locality(*locality);
  };
  run(1, [&] {
    shared_runs();
    return std::move(*volume);
  });
  run(2, delaunay_maintenance);
  run(3, [&] {
    shared_runs();
    return std::move(*locality);
  });
  run(4, force_kernels);
  run(5, isolated_bounce);
  run(6, noise_statistics);
  run(7, scaling_shapes);
  run(8, complexity_ordering);
  run(9, abp_phenomenology);
  run(10, determinism);
  run(11, inversion_repair);

  std::size_t failed = 0;
  for (const auto& [k, o] : results) failed += o.pass ? 0 : 1;
  std::printf("%zu of %zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}

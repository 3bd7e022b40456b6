#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "brownsim/dynamics/simulation.hpp"

namespace brownsim {

inline constexpr const char* kCsvHeader =
    "step,dt_used,step_ms,force_ms,maintain_ms,overlap_ms,overlap_iters,flip_passes,"
    "inversion_repairs,rollbacks";

/// Columns after `step`, in CSV order.
inline constexpr std::size_t kMetricColumns = 9;

/// One CSV row. Counters are stored as doubles so that rows and aggregates share a type.
struct MetricRow {
  std::size_t step = 0;
  std::array<double, kMetricColumns> values{};

  static MetricRow from(const StepStats& s);
};

struct Summary {
  std::size_t warmup = 0;
  std::size_t window = 0;
  std::array<double, kMetricColumns> mean{};
  std::array<double, kMetricColumns> max{};
  /// Not stored in the CSV summary lines; zero after read_csv.
  std::array<double, kMetricColumns> median{};

  double mean_of(std::size_t column) const { return mean[column]; }
};

/// Column indices into MetricRow::values / Summary arrays.
enum MetricColumn : std::size_t {
  kDtUsed = 0,
  kStepMs,
  kForceMs,
  kMaintainMs,
  kOverlapMs,
  kOverlapIters,
  kFlipPasses,
  kInversionRepairs,
  kRollbacks,
};

/// Means and maxima over rows [warmup, end). Throws std::invalid_argument when empty.
Summary aggregate(std::span<const MetricRow> rows, std::size_t warmup);
Summary aggregate(std::span<const StepStats> series, std::size_t warmup);

struct RunReport {
  std::string config_id;
  std::size_t n = 0;
  std::size_t warmup = 10;
  std::vector<MetricRow> rows;

  void add(const StepStats& s) { rows.push_back(MetricRow::from(s)); }
};

void write_csv(const RunReport& report, std::ostream& out);
/// Throws IoError with the path on failure.
void write_csv(const RunReport& report, const std::filesystem::path& path);

struct ParsedCsv {
  std::vector<MetricRow> rows;
  bool has_summary = false;
  Summary summary;
};

ParsedCsv read_csv(std::istream& in);
ParsedCsv read_csv(const std::filesystem::path& path);

/// 17 significant digits; reads back to the same double.
std::string format_real(double v);

}  // namespace brownsim

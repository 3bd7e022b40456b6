#include "brownsim/metrics/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "brownsim/core/errors.hpp"

namespace brownsim {

MetricRow MetricRow::from(const StepStats& s) {
  MetricRow r;
  r.step = s.step;
  r.values = {double(s.dt_used),
              s.step_ms,
              s.force_ms,
              s.maintain_ms,
              s.overlap_ms,
              double(s.overlap_iterations),
              double(s.flip_passes),
              double(s.inversion_repairs),
              double(s.rollbacks)};
  return r;
}

Summary aggregate(std::span<const MetricRow> rows, std::size_t warmup) {
  if (warmup >= rows.size()) {
    throw std::invalid_argument("aggregate: no steps left after a warmup of " +
                                std::to_string(warmup));
  }
  Summary s;
  s.warmup = warmup;
  s.window = rows.size() - warmup;
  std::array<double, kMetricColumns> sum{};
  s.max.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t i = warmup; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < kMetricColumns; ++c) {
      sum[c] += rows[i].values[c];
      s.max[c] = std::max(s.max[c], rows[i].values[c]);
    }
  }
  std::vector<double> column(s.window);
  const std::size_t mid = s.window / 2;
  for (std::size_t c = 0; c < kMetricColumns; ++c) {
    s.mean[c] = sum[c] / double(s.window);
    for (std::size_t i = 0; i < s.window; ++i) column[i] = rows[warmup + i].values[c];
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    s.median[c] = column[mid];
    if (s.window % 2 == 0) {
      s.median[c] = (s.median[c] + *std::max_element(column.begin(), column.begin() + mid)) / 2;
    }
  }
  return s;
}

Summary aggregate(std::span<const StepStats> series, std::size_t warmup) {
  std::vector<MetricRow> rows;
  rows.reserve(series.size());
  for (const auto& s : series) rows.push_back(MetricRow::from(s));
  return aggregate(rows, warmup);
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

bool is_counter(std::size_t c) { return c >= kOverlapIters; }

std::string format_cell(std::size_t c, double v) {
  if (is_counter(c)) return std::to_string(static_cast<long long>(v));
  return format_real(v);
}

double parse_double(std::string_view text, std::size_t line) {
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw IoError("metrics CSV line " + std::to_string(line) + ": bad number '" +
                  std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

void write_csv(const RunReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const MetricRow& r : report.rows) {
    out << r.step;
    for (std::size_t c = 0; c < kMetricColumns; ++c) out << ',' << format_cell(c, r.values[c]);
    out << '\n';
  }
  const std::size_t warmup = std::min(report.warmup, report.rows.size());
  const std::size_t window = report.rows.size() - warmup;
  out << "# summary warmup=" << warmup << " window=" << window << '\n';
  if (window == 0) return;
  const Summary s = aggregate(report.rows, warmup);
  out << "# mean";
  for (double v : s.mean) out << ',' << format_real(v);
  out << "\n# max";
  for (double v : s.max) out << ',' << format_real(v);
  out << '\n';
}

void write_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(report, f);
  f.flush();
  if (!f) throw IoError("failed writing " + path.string());
}

ParsedCsv read_csv(std::istream& in) {
  ParsedCsv parsed;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("metrics CSV: bad header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream words(line.substr(1));
      std::string tag;
      words >> tag;
      if (tag == "summary") {
        std::string kv;
        while (words >> kv) {
          const auto eq = kv.find('=');
          const std::string key = kv.substr(0, eq);
          const auto value = static_cast<std::size_t>(parse_double(kv.substr(eq + 1), line_no));
          if (key == "warmup") parsed.summary.warmup = value;
          if (key == "window") parsed.summary.window = value;
        }
      } else if (tag.rfind("mean,", 0) == 0 || tag.rfind("max,", 0) == 0) {
        const auto cells = split(tag);
        if (cells.size() != kMetricColumns + 1) {
          throw IoError("metrics CSV line " + std::to_string(line_no) + ": bad summary row");
        }
        auto& target = cells[0] == "mean" ? parsed.summary.mean : parsed.summary.max;
        for (std::size_t c = 0; c < kMetricColumns; ++c) {
          target[c] = parse_double(cells[c + 1], line_no);
        }
        parsed.has_summary = true;
      }
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != kMetricColumns + 1) {
      throw IoError("metrics CSV line " + std::to_string(line_no) + ": expected " +
                    std::to_string(kMetricColumns + 1) + " columns");
    }
    MetricRow r;
    r.step = static_cast<std::size_t>(parse_double(cells[0], line_no));
    for (std::size_t c = 0; c < kMetricColumns; ++c) r.values[c] = parse_double(cells[c + 1], line_no);
    parsed.rows.push_back(r);
  }
  return parsed;
}

ParsedCsv read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  return read_csv(f);
}

}  // namespace brownsim

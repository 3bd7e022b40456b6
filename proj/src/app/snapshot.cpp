#include "brownsim/app/snapshot.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "brownsim/core/errors.hpp"

namespace brownsim {

namespace {

std::string real17(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(v),
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw IoError("snapshot line " + std::to_string(line) + ": " + what);
}

bool read_real(std::string_view s, Real& out) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return false;
  out = static_cast<Real>(v);
  return true;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

Snapshot make_snapshot(const ParticleSystem& sys, Real time) {
  Snapshot s;
  s.length = sys.box().length();
  s.time = time;
  s.pos = sys.pos;
  s.types.reserve(sys.size());
  for (auto t : sys.type_of) s.types.push_back(std::uint32_t(t) + 1);
  return s;
}

void write_snapshot(const Snapshot& snap, std::ostream& out) {
  out << "# brownsim-snapshot v1 N=" << snap.size() << " L=" << real17(snap.length)
      << " t=" << real17(snap.time) << '\n';
  for (std::size_t i = 0; i < snap.size(); ++i) {
    out << real17(snap.pos[i].x) << ' ' << real17(snap.pos[i].y) << ' ' << snap.types[i] << '\n';
  }
}

void write_snapshot(const Snapshot& snap, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  write_snapshot(snap, f);
  f.flush();
  if (!f) throw IoError("failed writing " + path.string());
}

void write_snapshot(const ParticleSystem& sys, Real time, const std::filesystem::path& path) {
  write_snapshot(make_snapshot(sys, time), path);
}

Snapshot read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(1, "missing header");
  const auto head = words(line);
  if (head.size() != 6 || head[0] != "#" || head[1] != "brownsim-snapshot" || head[2] != "v1" ||
      head[3].substr(0, 2) != "N=" || head[4].substr(0, 2) != "L=" || head[5].substr(0, 2) != "t=") {
    fail(1, "expected '# brownsim-snapshot v1 N=<n> L=<L> t=<t>'");
  }
  Snapshot s;
  std::size_t n = 0;
  {
    const auto v = head[3].substr(2);
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) fail(1, "bad particle count");
  }
  if (!read_real(head[4].substr(2), s.length) || !(s.length > 0)) fail(1, "bad box length");
  if (!read_real(head[5].substr(2), s.time)) fail(1, "bad time");
  s.pos.reserve(n);
  s.types.reserve(n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto w = words(line);
    if (w.empty()) continue;
    if (s.pos.size() == n) fail(line_no, "more particle rows than N=" + std::to_string(n));
    Vec2 p;
    std::uint32_t type = 0;
    if (w.size() != 3 || !read_real(w[0], p.x) || !read_real(w[1], p.y)) {
      fail(line_no, "expected 'x y type'");
    }
    const auto res = std::from_chars(w[2].data(), w[2].data() + w[2].size(), type);
    if (res.ec != std::errc() || res.ptr != w[2].data() + w[2].size() || type == 0) {
      fail(line_no, "type must be a positive integer");
    }
    s.pos.push_back(p);
    s.types.push_back(type);
  }
  if (s.pos.size() != n) {
    fail(line_no + 1, "missing particle row " + std::to_string(s.pos.size() + 1) + " of " +
                          std::to_string(n));
  }
  return s;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  try {
    return read_snapshot(f);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_flags(std::span<const std::uint8_t> flags, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "# brownsim-locality v1 N=" << flags.size() << '\n';
  for (auto v : flags) f << (v ? 1 : 0) << '\n';
  if (!f) throw IoError("failed writing " + path.string());
}

std::vector<std::uint8_t> read_flags(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  std::string line;
  std::vector<std::uint8_t> out;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  bool have_header = false;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto at = line.find("N=");
      if (at != std::string::npos) {
        expected = std::stoul(line.substr(at + 2));
        have_header = true;
      }
      continue;
    }
    if (line == "0" || line == "1") {
      out.push_back(line == "1" ? 1 : 0);
    } else {
      throw IoError(path.string() + " line " + std::to_string(line_no) + ": expected 0 or 1");
    }
  }
  if (have_header && out.size() != expected) {
    throw IoError(path.string() + ": header says N=" + std::to_string(expected) + " but " +
                  std::to_string(out.size()) + " flags were read");
  }
  return out;
}

}  // namespace brownsim

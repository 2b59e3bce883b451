#include "qjump/trajectory_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

// shortest round-trip form
std::string fmt(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, std::size_t line, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
  return v;
}

std::uint64_t to_u64(const std::string& s, std::size_t line, const char* what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-') {
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
  }
  return v;
}

constexpr const char* kColumns = "sweep_index,time_s,I_sw_A,escape_level";

}  // namespace

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out << "# qjump trajectory\n";
  out << "# digest=" << (traj.digest.empty() ? "none" : traj.digest) << " seed=" << traj.seed
      << " period_s=" << fmt(traj.period) << " mode=" << traj.mode << "\n";
  if (!traj.provenance.empty()) out << "# " << traj.provenance << "\n";
  out << kColumns << "\n";
  for (const auto& e : traj.events) {
    out << e.sweep_index << ',' << fmt(e.time) << ',' << fmt(e.switching_current) << ','
        << level_letter(e.level) << (e.ramp_exhausted ? "*" : "") << '\n';
  }
}

void save_trajectory(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trajectory file '" + path + "'");
  write_trajectory(out, traj);
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

Trajectory read_trajectory(std::istream& in) {
  Trajectory traj;
  traj.digest.clear();
  traj.mode.clear();
  bool have_period = false;
  bool have_columns = false;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.find("digest=") == std::string::npos) {
        if (line != "# qjump trajectory") traj.provenance = line.size() > 2 ? line.substr(2) : "";
        continue;
      }
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = tok.substr(0, eq);
        const std::string v = tok.substr(eq + 1);
        if (k == "digest") traj.digest = v == "none" ? "" : v;
        else if (k == "seed") traj.seed = to_u64(v, n, "seed");
        else if (k == "period_s") {
          traj.period = to_double(v, n, "period");
          if (!(traj.period > 0.0)) throw ParseError("period must be positive", n);
          have_period = true;
        } else if (k == "mode") traj.mode = v;
      }
      continue;
    }
    if (!have_columns) {
      if (line != kColumns) throw ParseError("expected column header '" + std::string(kColumns) + "'", n);
      have_columns = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4) throw ParseError("expected 4 comma-separated fields", n);
    SwitchingEvent e;
    e.sweep_index = to_u64(f[0], n, "sweep_index");
    e.time = to_double(f[1], n, "time");
    e.switching_current = to_double(f[2], n, "switching current");
    std::string lvl = f[3];
    if (!lvl.empty() && lvl.back() == '*') {
      e.ramp_exhausted = true;
      lvl.pop_back();
    }
    if (lvl.size() != 1) throw ParseError("bad escape level '" + f[3] + "'", n);
    try {
      e.level = level_from_letter(lvl[0]);
    } catch (const DataError&) {
      throw ParseError("bad escape level '" + f[3] + "'", n);
    }
    if (!traj.events.empty() && e.sweep_index <= traj.events.back().sweep_index) {
      throw ParseError("sweep_index must increase strictly", n);
    }
    traj.events.push_back(e);
  }
  if (!have_period) throw ParseError("missing period_s in header", n == 0 ? 1 : n);
  if (!have_columns) throw ParseError("missing column header", n == 0 ? 1 : n);
  return traj;
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open trajectory file '" + path + "'");
  return read_trajectory(in);
}

}  // namespace qjump

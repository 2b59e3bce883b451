#include "qjump/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "qjump/constants.hpp"
#include "qjump/errors.hpp"

namespace qjump {

namespace {

enum class Kind { current, capacitance, time, frequency, rate, number, count, seed, frame, mode };

struct Unit {
  const char* name;
  double scale;
};

constexpr Unit kCurrent[] = {{"A", 1.0}, {"mA", 1e-3}, {"uA", 1e-6}, {"nA", 1e-9}, {"pA", 1e-12}};
constexpr Unit kCapacitance[] = {{"F", 1.0}, {"nF", 1e-9}, {"pF", 1e-12}, {"fF", 1e-15}};
constexpr Unit kTime[] = {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
constexpr Unit kFrequency[] = {{"rad/s", 1.0},        {"Hz", kTwoPi},        {"kHz", kTwoPi * 1e3},
                               {"MHz", kTwoPi * 1e6}, {"GHz", kTwoPi * 1e9}};
constexpr Unit kRate[] = {{"/s", 1.0}, {"1/s", 1.0}, {"/ms", 1e3}, {"/us", 1e6}, {"/ns", 1e9}};

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::current: return "a current (A, mA, uA, nA, pA)";
    case Kind::capacitance: return "a capacitance (F, nF, pF, fF)";
    case Kind::time: return "a time (s, ms, us, ns)";
    case Kind::frequency: return "a frequency (Hz, kHz, MHz, GHz, rad/s)";
    case Kind::rate: return "a rate (/s, /ms, /us, /ns)";
    default: return "a plain number";
  }
}

template <std::size_t N>
std::optional<double> find_unit(const Unit (&units)[N], std::string_view u) {
  for (const auto& x : units)
    if (u == x.name) return x.scale;
  return std::nullopt;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Raw {
  std::string value;
  std::size_t line;
};

struct Entry {
  Kind kind;
  std::function<void(SystemConfig&, double)> set;
};

// Keys that map straight onto a field.
const std::map<std::string, Entry>& direct_keys() {
  static const std::map<std::string, Entry> keys = {
      {"junction.critical_current", {Kind::current, [](SystemConfig& c, double v) { c.junction.critical_current = v; }}},
      {"junction.capacitance", {Kind::capacitance, [](SystemConfig& c, double v) { c.junction.capacitance = v; }}},
      {"junction.relaxation", {Kind::rate, [](SystemConfig& c, double v) { c.relaxation = v; }}},
      {"tls.level_spacing", {Kind::frequency, [](SystemConfig& c, double v) { c.tls.level_spacing = v; }}},
      {"tls.lifetime", {Kind::time, [](SystemConfig& c, double v) { c.tls_lifetime = v; }}},
      {"drive.frequency", {Kind::frequency, [](SystemConfig& c, double v) { c.drive.frequency = v; }}},
      {"escape.excited_ratio", {Kind::number, [](SystemConfig& c, double v) { c.escape.excited_ratio = v; }}},
      {"escape.tls_shift", {Kind::current, [](SystemConfig& c, double v) { c.escape.tls_shift = v; }}},
      {"escape.prefactor", {Kind::number, [](SystemConfig& c, double v) { c.escape.prefactor = v; }}},
      {"escape.exponent", {Kind::number, [](SystemConfig& c, double v) { c.escape.exponent = v; }}},
      {"ramp.start", {Kind::current, [](SystemConfig& c, double v) { c.ramp.start = v; }}},
      {"ramp.end", {Kind::current, [](SystemConfig& c, double v) { c.ramp.end = v; }}},
      {"ramp.ramp_time", {Kind::time, [](SystemConfig& c, double v) { c.ramp.ramp_time = v; }}},
      {"ramp.period", {Kind::time, [](SystemConfig& c, double v) { c.ramp.period = v; }}},
      {"ramp.intervals", {Kind::count, [](SystemConfig& c, double v) { c.ramp.intervals = static_cast<std::size_t>(v); }}},
      {"simulation.sweeps", {Kind::count, [](SystemConfig& c, double v) { c.sweeps = static_cast<std::size_t>(v); }}},
      {"simulation.calibration_sweeps", {Kind::count, [](SystemConfig& c, double v) { c.calibration_sweeps = static_cast<std::size_t>(v); }}},
  };
  return keys;
}

// Keys resolved after the whole file is read, since they depend on others.
const std::map<std::string, Kind>& derived_keys() {
  static const std::map<std::string, Kind> keys = {
      {"tls.asymmetry", Kind::current},  {"tls.coupling", Kind::frequency},
      {"drive.amplitude", Kind::current}, {"drive.rabi", Kind::frequency},
      {"simulation.seed", Kind::seed},    {"simulation.frame", Kind::frame},
      {"simulation.mode", Kind::mode},
  };
  return keys;
}

double parse_number(const std::string& s, std::size_t line, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("line " + std::to_string(line) + ": " + key + ": '" + s + "' is not a number");
  return v;
}

double parse_value(Kind kind, const Raw& raw, const std::string& key) {
  const std::string& text = raw.value;
  const auto sp = text.find_first_of(" \t");
  const std::string num = trim(text.substr(0, sp));
  const std::string unit = sp == std::string::npos ? std::string() : trim(text.substr(sp));
  auto fail_unit = [&] {
    throw ConfigError("line " + std::to_string(raw.line) + ": " + key + " expects " + kind_name(kind) +
                      (unit.empty() ? ", unit missing" : ", got unit '" + unit + "'"));
  };

  std::optional<double> scale;
  switch (kind) {
    case Kind::current: scale = find_unit(kCurrent, unit); break;
    case Kind::capacitance: scale = find_unit(kCapacitance, unit); break;
    case Kind::time: scale = find_unit(kTime, unit); break;
    case Kind::frequency: scale = find_unit(kFrequency, unit); break;
    case Kind::rate: scale = find_unit(kRate, unit); break;
    case Kind::number:
    case Kind::count:
      if (!unit.empty()) fail_unit();
      scale = 1.0;
      break;
    default: scale = 1.0;
  }
  if (!scale) fail_unit();
  const double v = parse_number(num, raw.line, key);
  if (kind == Kind::count && (v < 0.0 || v != std::floor(v) || v > 1e15)) {
    throw ConfigError("line " + std::to_string(raw.line) + ": " + key + " must be a non-negative integer");
  }
  return v * *scale;
}

// shortest round-trip form
std::string fmt(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_body(std::ostringstream& out, const SystemConfig& c, bool run_controls) {
  out << "[junction]\n";
  out << "critical_current = " << fmt(c.junction.critical_current) << " A\n";
  out << "capacitance = " << fmt(c.junction.capacitance) << " F\n";
  out << "relaxation = " << fmt(c.relaxation) << " /s\n";
  out << "\n[tls]\n";
  out << "level_spacing = " << fmt(c.tls.level_spacing) << " rad/s\n";
  out << "asymmetry = " << fmt(c.tls.asymmetry) << " A\n";
  out << "lifetime = " << fmt(c.tls_lifetime) << " s\n";
  out << "\n[drive]\n";
  out << "frequency = " << fmt(c.drive.frequency) << " rad/s\n";
  out << "amplitude = " << fmt(c.drive.amplitude) << " A\n";
  out << "\n[escape]\n";
  out << "excited_ratio = " << fmt(c.escape.excited_ratio) << "\n";
  out << "tls_shift = " << fmt(c.escape.tls_shift) << " A\n";
  out << "prefactor = " << fmt(c.escape.prefactor) << "\n";
  out << "exponent = " << fmt(c.escape.exponent) << "\n";
  out << "\n[ramp]\n";
  out << "start = " << fmt(c.ramp.start) << " A\n";
  out << "end = " << fmt(c.ramp.end) << " A\n";
  out << "ramp_time = " << fmt(c.ramp.ramp_time) << " s\n";
  out << "period = " << fmt(c.ramp.period) << " s\n";
  out << "intervals = " << c.ramp.intervals << "\n";
  out << "\n[simulation]\n";
  out << "frame = " << (c.frame == Frame::lab ? "lab" : "rotating") << "\n";
  if (run_controls) {
    out << "mode = " << (c.mode == SimulationMode::full ? "full" : "fast-rate") << "\n";
    out << "seed = " << c.seed << "\n";
    out << "sweeps = " << c.sweeps << "\n";
    out << "calibration_sweeps = " << c.calibration_sweeps << "\n";
  }
}

}  // namespace

SystemConfig parse_config(std::string_view text) {
  std::map<std::string, Raw> raw;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    const std::string key = section + "." + trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (!direct_keys().count(key) && !derived_keys().count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (raw.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    raw[key] = {value, line_no};
  }

  SystemConfig c;
  for (const auto& [key, r] : raw) {
    if (auto it = direct_keys().find(key); it != direct_keys().end()) {
      it->second.set(c, parse_value(it->second.kind, r, key));
    }
  }

  auto line_of = [&](const std::string& key) { return raw.count(key) ? raw.at(key).line : 0; };
  auto exclusive = [&](const char* a, const char* b) {
    if (raw.count(a) && raw.count(b)) {
      throw ConfigError("line " + std::to_string(std::max(line_of(a), line_of(b))) + ": give either " +
                        a + " or " + b + ", not both");
    }
  };
  exclusive("tls.asymmetry", "tls.coupling");
  exclusive("drive.amplitude", "drive.rabi");

  if (raw.count("simulation.seed")) {
    const Raw& r = raw.at("simulation.seed");
    std::size_t used = 0;
    try {
      c.seed = std::stoull(r.value, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != r.value.size() || r.value.front() == '-')
      throw ConfigError("line " + std::to_string(r.line) + ": simulation.seed must be an unsigned integer");
  }
  if (raw.count("simulation.frame")) {
    const Raw& r = raw.at("simulation.frame");
    if (r.value == "lab") c.frame = Frame::lab;
    else if (r.value == "rotating") c.frame = Frame::rotating;
    else throw ConfigError("line " + std::to_string(r.line) + ": simulation.frame must be lab or rotating");
  }
  if (raw.count("simulation.mode")) {
    const Raw& r = raw.at("simulation.mode");
    if (r.value == "full") c.mode = SimulationMode::full;
    else if (r.value == "fast-rate") c.mode = SimulationMode::fast_rate;
    else throw ConfigError("line " + std::to_string(r.line) + ": simulation.mode must be full or fast-rate");
  }

  // Field-level invariants first so that the coupling inversions below see
  // a usable junction; errors carry the line of the offending key.
  auto validated = [&](auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      const std::string field = msg.substr(0, msg.find(' '));
      const std::size_t ln = line_of(field);
      throw ConfigError(ln ? "line " + std::to_string(ln) + ": " + msg : msg);
    }
  };
  validated([&] { c.junction.validate(); });

  for (const char* key : {"tls.asymmetry", "tls.coupling", "drive.amplitude", "drive.rabi"}) {
    if (!raw.count(key)) continue;
    const double v = parse_value(derived_keys().at(key), raw.at(key), key);
    const std::string k = key;
    if (k == "tls.asymmetry") c.tls.asymmetry = v;
    if (k == "drive.amplitude") c.drive.amplitude = v;
    if (k == "tls.coupling" || k == "drive.rabi") {
      const double ref = k == "tls.coupling" ? c.tls.level_spacing : c.drive.frequency;
      if (!(ref > 0.0)) {
        throw ConfigError("line " + std::to_string(raw.at(key).line) + ": " + k +
                          " needs a positive " + (k == "tls.coupling" ? "tls.level_spacing" : "drive.frequency"));
      }
      if (k == "tls.coupling") c.tls.asymmetry = asymmetry_for_coupling(c.junction, v, ref);
      else c.drive.amplitude = amplitude_for_rabi(c.junction, v, ref);
    }
  }
  if (raw.count("tls.coupling")) raw["tls.asymmetry"] = raw.at("tls.coupling");
  if (raw.count("drive.rabi")) raw["drive.amplitude"] = raw.at("drive.rabi");

  validated([&] { c.validate(); });
  return c;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const SystemConfig& config) {
  std::ostringstream out;
  write_body(out, config, true);
  return out.str();
}

std::string config_digest(const SystemConfig& config) {
  std::ostringstream out;
  write_body(out, config, false);
  return fnv1a_hex(out.str());
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool same_fields(const SystemConfig& x, const SystemConfig& y) {
  return serialize_config(x) == serialize_config(y);
}

}  // namespace qjump

#pragma once

#include <string>
#include <string_view>

#include "qjump/system.hpp"

namespace qjump {

// Sectioned key = value text. Every dimensional value carries a unit:
//   current A mA uA nA pA; capacitance F nF pF fF; time s ms us ns;
//   frequency Hz kHz MHz GHz (converted to rad/s) or rad/s; rate /s /ms /us /ns.
// Errors name the offending line.
SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::string& path);

// Canonical form: fixed section/key order, SI units, %.17g. Re-parsing
// reproduces every field bit for bit.
std::string serialize_config(const SystemConfig& config);

// FNV-1a 64 of the canonical form without the run controls (seed, sweeps,
// mode, calibration_sweeps), as 16 hex digits.
std::string config_digest(const SystemConfig& config);

// FNV-1a 64 as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

bool same_fields(const SystemConfig& x, const SystemConfig& y);

}  // namespace qjump

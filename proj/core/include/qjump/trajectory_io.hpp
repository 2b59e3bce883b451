#pragma once

#include <iosfwd>
#include <string>

#include "qjump/sweep.hpp"

namespace qjump {

// Text format:
//   # qjump trajectory
//   # digest=<16 hex> seed=<u64> period_s=<%.17g> mode=<full|fast-rate|synthetic>
//   sweep_index,time_s,I_sw_A,escape_level
//   0,7.1e-06,3.57e-05,a
void write_trajectory(std::ostream& out, const Trajectory& traj);
void save_trajectory(const std::string& path, const Trajectory& traj);

// Throws ParseError with the offending line number.
Trajectory read_trajectory(std::istream& in);
Trajectory load_trajectory(const std::string& path);

}  // namespace qjump

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qjump/analysis.hpp"
#include "qjump/junction.hpp"
#include "qjump/sweep.hpp"
#include "qjump/telegraph.hpp"

namespace qjump {

struct SimulateOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sweeps;
  std::optional<SimulationMode> mode;
  std::string out;
  unsigned workers = 0;  // 0: default_workers()
};

struct SimulateSummary {
  Trajectory trajectory;
  std::optional<BandCountEstimate> estimate;
  double seconds = 0.0;
};

SimulateSummary cmd_simulate(const SimulateOptions& opt, std::ostream& log);

struct AnalyzeOptions {
  std::string trajectory_path;
  int bands = 3;
  double window = 6.0;
  std::string out_dir;
};

AnalysisReport cmd_analyze(const AnalyzeOptions& opt, std::ostream& log);

struct SynthOptions {
  double r_on = 0.236;    // 1/s
  double r_off = 2.38;    // 1/s
  double rate = 100.0;    // sweeps per second
  double duration = 1e4;  // s
  std::uint64_t seed = 1;
  std::string out;
  BandCurrents bands;
};

Trajectory synth_trajectory(const SynthOptions& opt);
Trajectory cmd_synth(const SynthOptions& opt, std::ostream& log);

struct SpectroscopyOptions {
  std::string config_path;
  std::size_t grid = 2001;
  std::optional<double> from;  // A
  std::optional<double> to;    // A
  std::string out;
};

struct SpectroscopySummary {
  std::vector<DressedPoint> points;
  double min_gap = 0.0;   // rad/s
  double min_bias = 0.0;  // A
  std::string digest;
};

SpectroscopySummary spectroscopy(const SystemConfig& config, const SpectroscopyOptions& opt);
SpectroscopySummary cmd_spectroscopy(const SpectroscopyOptions& opt, std::ostream& log);

}  // namespace qjump

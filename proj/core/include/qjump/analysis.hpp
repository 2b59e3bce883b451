#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qjump/rts.hpp"

namespace qjump {

struct AnalysisOptions {
  int bands = 3;
  double window = 6.0;  // s, Poisson counting window
  bool estimate_bands = true;
};

// classify -> binarize -> dwell fits -> spectrum -> Poisson. Stages that
// cannot run record a note instead of throwing; `failed` lists stages that
// hit a data error.
struct AnalysisReport {
  std::size_t events = 0;
  double period = 0.0;
  std::string digest;
  std::uint64_t seed = 0;
  std::string mode;

  std::optional<BandCountEstimate> estimate;
  int bands_requested = 3;
  int bands_used = 0;
  Classification classification;
  std::vector<double> band_fraction;
  std::vector<double> band_median;

  bool telegraph = false;  // three bands available, on/off analysis ran
  std::vector<Telegraph> sequence;
  double kappa = 0.0;
  double off_fraction = 0.0;
  std::vector<DwellRecord> dwells;
  std::optional<RateFit> r_on;
  std::optional<RateFit> r_off;
  std::optional<Psd> psd;
  std::optional<LorentzianFit> lorentzian;
  std::optional<PoissonFit> poisson;
  std::optional<bool> sum_consistent;  // Lorentzian width inside the summed dwell CIs

  std::vector<std::string> warnings;
  std::vector<std::string> failed;
};

AnalysisReport analyze(const Trajectory& traj, const AnalysisOptions& options = {});

std::string format_report(const AnalysisReport& report);
// report.txt plus dwell_on.csv, dwell_off.csv, psd.csv, poisson.csv, bands.csv.
void write_report(const AnalysisReport& report, const std::filesystem::path& dir);

}  // namespace qjump

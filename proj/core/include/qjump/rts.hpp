#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qjump/sweep.hpp"

namespace qjump {

// ---- band classification ------------------------------------------------

struct BandModel {
  std::vector<double> centers;     // strictly decreasing, A
  std::vector<double> thresholds;  // midpoints between adjacent centers

  int count() const { return static_cast<int>(centers.size()); }
  int assign(double current) const;
  // upper -> |0g>, middle -> |1g>, lower -> |0e> (for k = 3).
  static const char* state_name(int band, int k);
};

struct Classification {
  BandModel model;
  std::vector<int> labels;  // 0 = upper band
};

// Deterministic 1-D k-means. Starts at the sample quantiles (i + 1/2)/k,
// evenly over the range and at the widest gaps; the lowest SSE is kept.
Classification classify(std::span<const double> currents, int k);
Classification classify(const Trajectory& traj, int k);

// Gaussian mixture (EM, seeded from k-means). The largest k whose components
// all carry >= min_weight and whose neighbours are separated by Ashman's
// D >= min_separation wins.
struct BandCountEstimate {
  int bands = 1;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> sigmas;
  std::string note;
};
BandCountEstimate estimate_band_count(std::span<const double> currents, int max_bands = 3,
                                      double min_weight = 0.01, double min_separation = 2.0);

// ---- telegraph ----------------------------------------------------------

enum class Telegraph : std::uint8_t { off = 0, on = 1 };

// Upper and middle bands are "on", the lowest band "off" (k = 3 labels).
std::vector<Telegraph> binarize(std::span<const int> labels, int k = 3);

struct DwellRecord {
  Telegraph state = Telegraph::on;
  double duration = 0.0;  // s
  std::size_t start = 0;  // sweep index
  std::size_t length = 0; // sweeps
  bool censored = false;  // first or last run
};

std::vector<DwellRecord> extract_dwells(std::span<const Telegraph> seq, double period);
std::vector<double> complete_durations(std::span<const DwellRecord> dwells, Telegraph state);

// ---- dwell-time fits ----------------------------------------------------

struct RateFit {
  double rate = 0.0;     // 1/s
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence = 0.9;
  std::size_t samples = 0;
  double total_time = 0.0;
  bool quantized = false;

  double midpoint() const { return 0.5 * (ci_low + ci_high); }
};

// Exponential MLE n / sum(d) with the exact chi-square interval. With
// quantum > 0 the durations are multiples of it and the geometric MLE
// -ln(1 - n/sum(k)) / quantum is used, interval endpoints mapped alike.
RateFit fit_exponential(std::span<const double> durations, double quantum = 0.0,
                        double confidence = 0.9);

// Least squares on log counts of a histogram with the given bin width
// (empty bins dropped). Returns the fitted decay rate.
struct HistogramFit {
  double rate = 0.0;
  std::vector<double> bin_left;
  std::vector<std::size_t> counts;
};
HistogramFit fit_exponential_histogram(std::span<const double> durations, double bin_width);

// ---- spectrum -----------------------------------------------------------

struct Psd {
  std::vector<double> frequency;  // Hz, 0 .. Nyquist
  std::vector<double> power;      // one-sided, signal^2 / Hz
  double dc_power = 0.0;          // mean^2, removed before the transform
  double variance = 0.0;
  double sample_interval = 0.0;
  std::size_t segment_length = 0;
  std::size_t segments = 0;

  double resolution() const { return frequency.size() > 1 ? frequency[1] - frequency[0] : 0.0; }
  double integral() const;  // sum of power * df
};

// Welch: 8 half-overlapping Hann segments, global mean removed.
Psd power_spectrum(std::span<const double> signal, double period, std::size_t segments = 8);
// Telegraph coded as +kappa/2 (on) and -kappa/2 (off).
Psd power_spectrum(std::span<const Telegraph> seq, double period, double kappa = 1.0);

// A / (R^2 + w(f)^2) + floor, with w(f) = (2/T) sin(pi f T) the sampled-data
// counterpart of 2 pi f (identical for f T << 1).
struct LorentzianFit {
  double amplitude = 0.0;  // A
  double width = 0.0;      // R = R_on + R_off, 1/s
  double floor = 0.0;
  double residual = 0.0;   // rms of log residuals
  int iterations = 0;
  double sample_interval = 0.0;

  double half_width_hz() const;
  double model(double f) const;
  // kappa^2 given the split of R into R_on, R_off (one-sided convention).
  double kappa_squared(double r_on, double r_off) const;
};

LorentzianFit fit_lorentzian(const Psd& psd);

// One-sided PSD of a +/- kappa/2 telegraph with the given rates.
double telegraph_psd(double f, double kappa, double r_on, double r_off);

// ---- jump counts --------------------------------------------------------

struct PoissonFit {
  double window = 6.0;  // s
  std::size_t windows = 0;
  std::vector<std::size_t> histogram;  // histogram[m] = windows with m off->on jumps
  double mean = 0.0;
  double variance = 0.0;
  bool tested = false;
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 0.0;
  int pooled_bins = 0;
  double dispersion_z = 0.0;  // (var/mean - 1) / sqrt(2 / (windows - 1))
};

PoissonFit poisson_test(std::span<const Telegraph> seq, double period, double window = 6.0);

}  // namespace qjump

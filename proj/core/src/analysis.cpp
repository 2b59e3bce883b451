#include "qjump/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
void stage(AnalysisReport& r, const char* name, F&& fn) {
  try {
    fn();
  } catch (const DataError& e) {
    r.failed.push_back(std::string(name) + ": " + e.what());
  } catch (const NumericalError& e) {
    r.failed.push_back(std::string(name) + ": " + e.what());
  }
}

void write_histogram(std::ostream& out, const std::vector<double>& durations, double bin) {
  out << "bin_start_s,bin_end_s,count\n";
  if (durations.empty()) return;
  const double dmax = *std::max_element(durations.begin(), durations.end());
  const auto bins = static_cast<std::size_t>(dmax / bin) + 1;
  std::vector<std::size_t> counts(bins, 0);
  for (double d : durations) ++counts[std::min(bins - 1, static_cast<std::size_t>(d / bin))];
  for (std::size_t i = 0; i < bins; ++i) {
    out << num(i * bin) << ',' << num((i + 1) * bin) << ',' << counts[i] << '\n';
  }
}

}  // namespace

AnalysisReport analyze(const Trajectory& traj, const AnalysisOptions& options) {
  AnalysisReport r;
  r.events = traj.events.size();
  r.period = traj.period;
  r.digest = traj.digest;
  r.seed = traj.seed;
  r.mode = traj.mode;
  r.bands_requested = options.bands;
  const std::vector<double> currents = traj.currents();

  int k = options.bands;
  if (options.estimate_bands) {
    stage(r, "band estimate", [&] {
      r.estimate = estimate_band_count(currents, std::max(3, options.bands));
      if (r.estimate->bands < k) {
        r.warnings.push_back("requested " + std::to_string(k) + " bands but the data support " +
                             std::to_string(r.estimate->bands) + " (" + r.estimate->note + ")");
        k = std::max(2, r.estimate->bands);
        if (r.estimate->bands < 2) r.warnings.push_back("data look single-banded; classifying with k = 2 anyway");
      }
    });
  }

  stage(r, "classify", [&] {
    r.classification = classify(currents, k);
    r.bands_used = k;
  });
  if (r.bands_used == 0) return r;

  std::vector<std::vector<double>> per_band(k);
  for (std::size_t i = 0; i < currents.size(); ++i) per_band[r.classification.labels[i]].push_back(currents[i]);
  for (int b = 0; b < k; ++b) {
    r.band_fraction.push_back(static_cast<double>(per_band[b].size()) / currents.size());
    r.band_median.push_back(median_of(per_band[b]));
  }

  if (k != 3) {
    r.warnings.push_back("no lowest |0e> band: on/off telegraph analysis skipped");
    return r;
  }

  r.telegraph = true;
  r.sequence = binarize(r.classification.labels, 3);
  double on_sum = 0.0, off_sum = 0.0;
  std::size_t on_n = 0, off_n = 0;
  for (std::size_t i = 0; i < currents.size(); ++i) {
    if (r.sequence[i] == Telegraph::on) {
      on_sum += currents[i];
      ++on_n;
    } else {
      off_sum += currents[i];
      ++off_n;
    }
  }
  r.off_fraction = static_cast<double>(off_n) / currents.size();
  if (on_n && off_n) r.kappa = on_sum / on_n - off_sum / off_n;

  r.dwells = extract_dwells(r.sequence, traj.period);
  stage(r, "R_on fit", [&] {
    r.r_on = fit_exponential(complete_durations(r.dwells, Telegraph::on), traj.period);
  });
  stage(r, "R_off fit", [&] {
    r.r_off = fit_exponential(complete_durations(r.dwells, Telegraph::off), traj.period);
  });
  stage(r, "spectrum", [&] {
    r.psd = power_spectrum(r.sequence, traj.period, r.kappa > 0.0 ? r.kappa : 1.0);
    r.lorentzian = fit_lorentzian(*r.psd);
  });
  if (r.r_on && r.r_off && r.lorentzian) {
    const double w = r.lorentzian->width;
    r.sum_consistent = w >= r.r_on->ci_low + r.r_off->ci_low && w <= r.r_on->ci_high + r.r_off->ci_high;
  }
  stage(r, "Poisson test", [&] { r.poisson = poisson_test(r.sequence, traj.period, options.window); });
  return r;
}

std::string format_report(const AnalysisReport& r) {
  std::ostringstream out;
  out << "# qjump analysis report\n";
  out << "digest = " << (r.digest.empty() ? "none" : r.digest) << "\n";
  out << "seed = " << r.seed << "\n";
  out << "mode = " << r.mode << "\n";
  out << "events = " << r.events << "\n";
  out << "period_s = " << num(r.period) << "\n";
  if (r.estimate) {
    out << "bands_estimated = " << r.estimate->bands << "\n";
    out << "band_estimate_note = " << r.estimate->note << "\n";
  }
  out << "bands_requested = " << r.bands_requested << "\n";
  out << "bands_used = " << r.bands_used << "\n";
  for (int b = 0; b < r.bands_used; ++b) {
    const std::string p = "band" + std::to_string(b) + "_";
    out << p << "state = " << BandModel::state_name(b, r.bands_used) << "\n";
    out << p << "center_A = " << num(r.classification.model.centers[b]) << "\n";
    out << p << "median_A = " << num(r.band_median[b]) << "\n";
    out << p << "fraction = " << num(r.band_fraction[b]) << "\n";
  }
  if (r.telegraph) {
    out << "kappa_A = " << num(r.kappa) << "\n";
    out << "off_fraction = " << num(r.off_fraction) << "\n";
    auto rate = [&](const char* name, const std::optional<RateFit>& f) {
      if (!f) return;
      out << name << "_per_s = " << num(f->rate) << "\n";
      out << name << "_ci90_low = " << num(f->ci_low) << "\n";
      out << name << "_ci90_high = " << num(f->ci_high) << "\n";
      out << name << "_ci90_mid = " << num(f->midpoint()) << "\n";
      out << name << "_dwells = " << f->samples << "\n";
    };
    rate("R_on", r.r_on);
    rate("R_off", r.r_off);
    if (r.lorentzian) {
      out << "lorentzian_width_per_s = " << num(r.lorentzian->width) << "\n";
      out << "lorentzian_half_width_Hz = " << num(r.lorentzian->half_width_hz()) << "\n";
      out << "lorentzian_amplitude = " << num(r.lorentzian->amplitude) << "\n";
      out << "lorentzian_floor = " << num(r.lorentzian->floor) << "\n";
      out << "lorentzian_log_rms_residual = " << num(r.lorentzian->residual) << "\n";
      if (r.r_on && r.r_off) {
        out << "dwell_rate_sum_per_s = " << num(r.r_on->rate + r.r_off->rate) << "\n";
        out << "kappa_from_spectrum_A = "
            << num(std::sqrt(r.lorentzian->kappa_squared(r.r_on->rate, r.r_off->rate))) << "\n";
      }
      if (r.sum_consistent) out << "lorentzian_within_dwell_ci = " << (*r.sum_consistent ? "yes" : "no") << "\n";
    }
    if (r.poisson) {
      const auto& p = *r.poisson;
      out << "poisson_window_s = " << num(p.window) << "\n";
      out << "poisson_windows = " << p.windows << "\n";
      out << "poisson_mean = " << num(p.mean) << "\n";
      out << "poisson_variance = " << num(p.variance) << "\n";
      out << "poisson_dispersion_z = " << num(p.dispersion_z) << "\n";
      out << "poisson_tested = " << (p.tested ? "yes" : "no") << "\n";
      if (p.tested) {
        out << "poisson_chi_square = " << num(p.chi_square) << "\n";
        out << "poisson_dof = " << p.dof << "\n";
        out << "poisson_p_value = " << num(p.p_value) << "\n";
      }
    }
  }
  for (const auto& w : r.warnings) out << "warning = " << w << "\n";
  for (const auto& f : r.failed) out << "error = " << f << "\n";
  return out.str();
}

void write_report(const AnalysisReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("report.txt");
    f << format_report(r);
  }
  {
    auto f = open("bands.csv");
    f << "band,state,center_A,median_A,fraction\n";
    for (int b = 0; b < r.bands_used; ++b) {
      f << b << ',' << BandModel::state_name(b, r.bands_used) << ',' << num(r.classification.model.centers[b])
        << ',' << num(r.band_median[b]) << ',' << num(r.band_fraction[b]) << '\n';
    }
  }
  if (!r.telegraph) return;
  {
    auto f = open("dwell_on.csv");
    write_histogram(f, complete_durations(r.dwells, Telegraph::on), 10.0 * r.period);
  }
  {
    auto f = open("dwell_off.csv");
    write_histogram(f, complete_durations(r.dwells, Telegraph::off), 10.0 * r.period);
  }
  if (r.psd) {
    auto f = open("psd.csv");
    f << "frequency_Hz,power_A2_per_Hz,model_A2_per_Hz\n";
    for (std::size_t k = 0; k < r.psd->frequency.size(); ++k) {
      f << num(r.psd->frequency[k]) << ',' << num(r.psd->power[k]) << ','
        << (r.lorentzian ? num(r.lorentzian->model(r.psd->frequency[k])) : std::string("nan")) << '\n';
    }
  }
  if (r.poisson) {
    auto f = open("poisson.csv");
    f << "jumps,windows,expected\n";
    const auto& p = *r.poisson;
    double term = std::exp(-p.mean);
    for (std::size_t m = 0; m < p.histogram.size(); ++m) {
      if (m > 0) term *= p.mean / static_cast<double>(m);
      f << m << ',' << p.histogram[m] << ',' << num(term * p.windows) << '\n';
    }
  }
}

}  // namespace qjump

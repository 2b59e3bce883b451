#include "qjump/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qjump/config.hpp"
#include "qjump/constants.hpp"
#include "qjump/errors.hpp"
#include "qjump/trajectory_io.hpp"

namespace qjump {

namespace {

// shortest text that parses back to the same double
std::string num(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

SimulateSummary cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
  SystemConfig cfg = load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.sweeps) cfg.sweeps = *opt.sweeps;
  if (opt.mode) cfg.mode = *opt.mode;
  cfg.validate();
  const unsigned workers = opt.workers ? opt.workers : default_workers();

  const auto t0 = std::chrono::steady_clock::now();
  const SweepEngine engine(cfg);
  SimulateSummary s;
  if (cfg.mode == SimulationMode::full) {
    s.trajectory = run_trajectory(engine, cfg.sweeps, cfg.seed, workers);
  } else {
    const CalibrationTable table = calibrate(engine, cfg.calibration_sweeps, cfg.seed, workers);
    s.trajectory = run_fast_rate_mode(cfg, table, cfg.sweeps, cfg.seed);
  }
  s.trajectory.provenance = "command: simulate sweeps=" + std::to_string(cfg.sweeps);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!opt.out.empty()) save_trajectory(opt.out, s.trajectory);

  log << "config digest " << s.trajectory.digest << ", seed " << cfg.seed << ", mode "
      << s.trajectory.mode << "\n";
  log << "sweeps " << s.trajectory.events.size() << " in " << short_num(s.seconds) << " s ("
      << workers << " worker" << (workers == 1 ? "" : "s") << ")\n";
  if (s.trajectory.events.size() >= 100) {
    s.estimate = estimate_band_count(s.trajectory.currents(), 3);
    log << "band count estimate " << s.estimate->bands << ":";
    for (std::size_t i = 0; i < s.estimate->means.size(); ++i) {
      log << " " << short_num(s.estimate->means[i] * 1e6) << " uA (" << short_num(100.0 * s.estimate->weights[i])
          << "%)";
    }
    log << "\n";
  } else {
    log << "band count estimate skipped (fewer than 100 sweeps)\n";
  }
  return s;
}

AnalysisReport cmd_analyze(const AnalyzeOptions& opt, std::ostream& log) {
  if (opt.bands != 2 && opt.bands != 3) throw ConfigError("--bands must be 2 or 3");
  if (!(opt.window > 0.0)) throw ConfigError("--window must be positive");
  const Trajectory traj = load_trajectory(opt.trajectory_path);
  AnalysisOptions ao;
  ao.bands = opt.bands;
  ao.window = opt.window;
  AnalysisReport r = analyze(traj, ao);
  if (!opt.out_dir.empty()) write_report(r, opt.out_dir);
  log << format_report(r);
  return r;
}

Trajectory synth_trajectory(const SynthOptions& opt) {
  if (!(opt.rate > 0.0) || !(opt.duration > 0.0)) throw ConfigError("--rate and --duration must be positive");
  if (!(opt.r_on > 0.0) || !(opt.r_off > 0.0)) throw ConfigError("--ron and --roff must be positive");
  const double period = 1.0 / opt.rate;
  const auto samples = static_cast<std::size_t>(std::llround(opt.duration * opt.rate));
  if (samples < 1) throw ConfigError("duration shorter than one sweep");
  const auto seq = generate_telegraph(opt.r_on, opt.r_off, period, samples, opt.seed);
  Trajectory t = synthesize_trajectory(seq, period, opt.seed, opt.bands);
  t.provenance = "command: synth ron=" + num(opt.r_on) + " roff=" + num(opt.r_off) + " rate=" + num(opt.rate) +
                 " duration=" + num(opt.duration) + " upper=" + num(opt.bands.upper) + " middle=" +
                 num(opt.bands.middle) + " lower=" + num(opt.bands.lower) + " noise=" + num(opt.bands.noise) +
                 " middle_fraction=" + num(opt.bands.middle_fraction);
  t.digest = fnv1a_hex(t.provenance);
  return t;
}

Trajectory cmd_synth(const SynthOptions& opt, std::ostream& log) {
  Trajectory t = synth_trajectory(opt);
  if (!opt.out.empty()) save_trajectory(opt.out, t);
  std::size_t off = 0;
  for (const auto& e : t.events) off += e.level == Level::c;
  log << "synthetic telegraph: " << t.events.size() << " sweeps, off fraction "
      << short_num(static_cast<double>(off) / t.events.size()) << ", digest " << t.digest << "\n";
  return t;
}

SpectroscopySummary spectroscopy(const SystemConfig& config, const SpectroscopyOptions& opt) {
  if (opt.grid < 2) throw ConfigError("--grid needs at least 2 points");
  const JunctionParams& j = config.junction;
  const double top = shallow_well_bias(j);
  double lo = 0.0, hi = 0.0;
  if (opt.from && opt.to) {
    lo = *opt.from;
    hi = *opt.to;
  } else {
    // Default window around the anticrossing.
    const double cross = bias_for_omega_10(j, config.tls.level_spacing);
    lo = opt.from.value_or(cross - 200e-9);
    hi = opt.to.value_or(std::min(cross + 50e-9, top * (1.0 - 1e-9)));
  }
  if (!(lo < hi) || lo < 0.0 || hi >= top) {
    throw DomainError("spectroscopy grid [" + short_num(lo) + ", " + short_num(hi) +
                      "] A must lie inside [0, " + short_num(top) + ") A");
  }
  std::vector<double> grid(opt.grid);
  for (std::size_t i = 0; i < opt.grid; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(opt.grid - 1);
  }
  SpectroscopySummary s;
  s.points = dressed_spectrum(j, config.tls, grid);
  s.digest = config_digest(config);
  s.min_gap = s.points.front().gap();
  s.min_bias = s.points.front().bias;
  for (const auto& p : s.points) {
    if (p.gap() < s.min_gap) {
      s.min_gap = p.gap();
      s.min_bias = p.bias;
    }
  }
  return s;
}

SpectroscopySummary cmd_spectroscopy(const SpectroscopyOptions& opt, std::ostream& log) {
  const SystemConfig cfg = load_config(opt.config_path);
  SpectroscopySummary s = spectroscopy(cfg, opt);
  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + opt.out + "'");
    f << "# qjump dressed spectrum\n# digest=" << s.digest << " grid=" << opt.grid << "\n";
    f << "bias_A,lower_Hz,upper_Hz,splitting_Hz\n";
    for (const auto& p : s.points) {
      f << num(p.bias) << ',' << num(p.lower / kTwoPi) << ',' << num(p.upper / kTwoPi) << ','
        << num(p.gap() / kTwoPi) << '\n';
    }
  }
  log << "config digest " << s.digest << "\n";
  log << "minimum splitting " << fixed_num(s.min_gap / kTwoPi / 1e6) << " MHz (2 pi x) at I_b = "
      << short_num(s.min_bias * 1e6) << " uA\n";
  return s;
}

}  // namespace qjump

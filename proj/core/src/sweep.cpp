#include "qjump/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "qjump/config.hpp"
#include "qjump/errors.hpp"

namespace qjump {

namespace {

Propagator build_interval(const SystemConfig& cfg, const EngineOptions& opt, double t0, double h,
                          std::size_t& substeps) {
  const RampConfig& ramp = cfg.ramp;
  const double b0 = ramp.bias_at(t0);
  const double b1 = ramp.bias_at(t0 + h);
  const double dw = std::abs(omega_10(cfg.junction, b1) - omega_10(cfg.junction, b0));
  const HamiltonianSpec top = cfg.hamiltonian_at(b1);
  const double gmax = std::max({top.gamma_a, top.gamma_b + top.gamma_ba, top.gamma_c});
  const int n = std::max({1, static_cast<int>(std::ceil(dw / opt.max_detuning_step)),
                          static_cast<int>(std::ceil(gmax * h / opt.max_decay_step))});
  const double hs = h / n;
  substeps += static_cast<std::size_t>(n);

  Propagator p;
  for (int i = 0; i < n; ++i) {
    const double ts = t0 + i * hs;
    const HamiltonianSpec spec = cfg.hamiltonian_at(ramp.bias_at(ts + 0.5 * hs));
    const ChannelRates rates = ChannelRates::from(spec);
    if (cfg.frame == Frame::rotating) {
      p = p.then(exact_propagator(build_drive_frame(spec), rates, hs));
    } else {
      const double bound = hamiltonian_norm_bound(spec, Frame::lab);
      const int m = std::max(1, static_cast<int>(std::ceil(hs * bound / opt.lab_phase_step)));
      p = p.then(integrate_propagator([&](double t) { return build_lab(spec, t); }, rates, ts, hs, m));
    }
  }
  return p;
}

Vector3c initial_state(TlsState s) {
  return s == TlsState::g ? Vector3c(1.0, 0.0, 0.0) : Vector3c(0.0, 0.0, 1.0);
}

Level most_populated(const Vector3c& psi) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (std::norm(psi[i]) > std::norm(psi[best])) best = i;
  return static_cast<Level>(best);
}

TlsState tls_after(Level level, const Vector3c& psi) {
  if (level == Level::c) return TlsState::e;
  const double pc = std::norm(psi[2]);
  return pc > std::norm(psi[0]) + std::norm(psi[1]) ? TlsState::e : TlsState::g;
}

template <class F>
void parallel_blocks(std::size_t n, unsigned workers, F&& body) {
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      const std::size_t end = std::min(n, (b + 1) * kBlock);
      for (std::size_t k = b * kBlock; k < end; ++k) body(k);
    }
  };
  std::vector<std::thread> pool;
  const unsigned extra = workers > 1 ? workers - 1 : 0;
  pool.reserve(extra);
  for (unsigned w = 0; w < extra; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

constexpr std::uint64_t kCalibrationDomain[2] = {0x2545f4914f6cdd1dULL, 0x7fb5d329728ea185ULL};

}  // namespace

std::vector<double> Trajectory::currents() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.switching_current);
  return out;
}

SweepEngine::SweepEngine(const SystemConfig& config, EngineOptions options) : config_(config) {
  config_.validate();
  const RampConfig& ramp = config_.ramp;
  const double top = shallow_well_bias(config_.junction);
  const double h = ramp.interval_duration();
  saturated_from_ = ramp.intervals;
  table_.reserve(ramp.intervals);
  for (std::size_t k = 0; k < ramp.intervals; ++k) {
    const double t0 = static_cast<double>(k) * h;
    if (ramp.bias_at(t0 + h) >= top) {
      saturated_from_ = k;
      break;
    }
    table_.push_back(build_interval(config_, options, t0, h, substeps_));
  }
}

SweepOutcome SweepEngine::run_sweep(TlsOccupation tls_in, UniformStream& stream,
                                    std::size_t sweep_index) const {
  const RampConfig& ramp = config_.ramp;
  const double h = ramp.interval_duration();
  Vector3c psi = initial_state(tls_in.state);

  auto finish = [&](std::size_t k, Level level, TlsState tls_out, bool exhausted) {
    SweepOutcome out;
    out.time_in_sweep = (static_cast<double>(k) + 0.5) * h;
    out.event.sweep_index = sweep_index;
    out.event.time = static_cast<double>(sweep_index) * ramp.period + out.time_in_sweep;
    out.event.switching_current = ramp.interval_bias(k);
    out.event.level = level;
    out.event.ramp_exhausted = exhausted;
    out.tls.state = tls_out;
    out.tls.last_update = tls_out == tls_in.state ? tls_in.last_update : sweep_index;
    return out;
  };

  for (std::size_t k = 0; k < table_.size(); ++k) {
    const double r = stream.uniform();
    const PropagatedState st = propagate(table_[k], psi);
    const auto& p = st.channels.p;
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
      acc += p[c];
      if (r < acc) {
        const Level level = static_cast<Level>(c);
        return finish(k, level, tls_after(level, st.amplitudes), false);
      }
    }
    if (r < acc + p[static_cast<int>(Channel::relax_ba)]) {
      psi = Vector3c(1.0, 0.0, 0.0);
      continue;
    }
    const double norm = st.amplitudes.squaredNorm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      if (!std::isfinite(norm)) throw NonFiniteError("non-finite amplitudes during sweep");
      const Level level = most_populated(psi);
      return finish(k, level, tls_after(level, psi), false);
    }
    psi = st.amplitudes / std::sqrt(norm);
  }

  if (saturated_from_ < ramp.intervals) {
    // Past the shallow-well bias no level is bound: switching is certain and
    // the escaping level is drawn from the populations.
    const std::size_t k = saturated_from_;
    const double r = stream.uniform();
    const double pa = std::norm(psi[0]);
    const double pb = std::norm(psi[1]);
    const Level level = r < pa ? Level::a : (r < pa + pb ? Level::b : Level::c);
    return finish(k, level, tls_after(level, psi), false);
  }

  const Level level = most_populated(psi);
  return finish(ramp.intervals - 1, level, tls_after(level, psi), true);
}

TlsOccupation relax_between_sweeps(const SystemConfig& config, TlsOccupation tls,
                                   std::uint64_t seed, std::size_t sweep_index) {
  UniformStream s(seed, sweep_index, UniformStream::tls);
  const double u = s.uniform();
  const double p = -std::expm1(-config.ramp.period / config.tls_lifetime);
  if (tls.state == TlsState::e && u < p) {
    tls.state = TlsState::g;
    tls.last_update = sweep_index + 1;
  }
  return tls;
}

unsigned default_workers() {
  if (const char* env = std::getenv("QJUMP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

Trajectory run_trajectory(const SweepEngine& engine, std::size_t n_sweeps, std::uint64_t seed,
                          unsigned workers) {
  if (n_sweeps < 1) throw ConfigError("run_trajectory needs at least one sweep");
  const SystemConfig& cfg = engine.config();
  Trajectory traj;
  traj.period = cfg.ramp.period;
  traj.seed = seed;
  traj.digest = config_digest(cfg);
  traj.mode = "full";
  traj.events.reserve(n_sweeps);
  traj.tls_in.reserve(n_sweeps);

  TlsOccupation tls;
  if (workers <= 1) {
    for (std::size_t k = 0; k < n_sweeps; ++k) {
      UniformStream stream = rng_stream(seed, k);
      const SweepOutcome out = engine.run_sweep(tls, stream, k);
      traj.tls_in.push_back(tls.state);
      traj.events.push_back(out.event);
      tls = relax_between_sweeps(cfg, out.tls, seed, k);
    }
    return traj;
  }

  // Each sweep depends only on its own stream and TLS input, so both
  // branches are computed up front and threaded afterwards.
  std::array<std::vector<SweepOutcome>, 2> branch;
  branch[0].resize(n_sweeps);
  branch[1].resize(n_sweeps);
  parallel_blocks(n_sweeps, workers, [&](std::size_t k) {
    for (int b = 0; b < 2; ++b) {
      UniformStream stream = rng_stream(seed, k);
      branch[b][k] = engine.run_sweep({static_cast<TlsState>(b), 0}, stream, k);
    }
  });
  for (std::size_t k = 0; k < n_sweeps; ++k) {
    SweepOutcome out = branch[static_cast<int>(tls.state)][k];
    out.tls.last_update = out.tls.state == tls.state ? tls.last_update : k;
    traj.tls_in.push_back(tls.state);
    traj.events.push_back(out.event);
    tls = relax_between_sweeps(cfg, out.tls, seed, k);
  }
  return traj;
}

Trajectory run_trajectory(const SystemConfig& config, std::size_t n_sweeps, std::uint64_t seed,
                          unsigned workers) {
  const SweepEngine engine(config);
  return run_trajectory(engine, n_sweeps, seed, workers);
}

CalibrationTable calibrate(const SweepEngine& engine, std::size_t per_branch, std::uint64_t seed,
                           unsigned workers) {
  if (per_branch < 1) throw ConfigError("calibration needs at least one sweep per branch");
  CalibrationTable table;
  table.digest = config_digest(engine.config());
  for (int b = 0; b < 2; ++b) {
    auto& out = table.samples[b];
    out.resize(per_branch);
    parallel_blocks(per_branch, std::max(1u, workers), [&](std::size_t k) {
      UniformStream stream(seed, k, kCalibrationDomain[b]);
      const SweepOutcome o = engine.run_sweep({static_cast<TlsState>(b), 0}, stream, k);
      out[k] = {o.event.level, o.event.switching_current, o.time_in_sweep, o.tls.state,
                o.event.ramp_exhausted};
    });
  }
  return table;
}

Trajectory run_fast_rate_mode(const SystemConfig& config, const CalibrationTable& table,
                              std::size_t n_sweeps, std::uint64_t seed) {
  if (!table.complete()) throw DataError("fast-rate mode needs a calibration table for both TLS states");
  if (!table.digest.empty() && table.digest != config_digest(config)) {
    throw DataError("calibration table was built for config " + table.digest + ", not " +
                    config_digest(config));
  }
  if (n_sweeps < 1) throw ConfigError("run_fast_rate_mode needs at least one sweep");

  Trajectory traj;
  traj.period = config.ramp.period;
  traj.seed = seed;
  traj.digest = config_digest(config);
  traj.mode = "fast-rate";
  traj.events.reserve(n_sweeps);
  traj.tls_in.reserve(n_sweeps);

  TlsOccupation tls;
  for (std::size_t k = 0; k < n_sweeps; ++k) {
    const auto& samples = table.branch(tls.state);
    UniformStream stream = rng_stream(seed, k);
    const auto j = std::min(samples.size() - 1,
                            static_cast<std::size_t>(stream.uniform() * static_cast<double>(samples.size())));
    const CalibrationSample& s = samples[j];
    SwitchingEvent ev;
    ev.sweep_index = k;
    ev.time = static_cast<double>(k) * config.ramp.period + s.time_in_sweep;
    ev.switching_current = s.switching_current;
    ev.level = s.level;
    ev.ramp_exhausted = s.ramp_exhausted;
    traj.tls_in.push_back(tls.state);
    traj.events.push_back(ev);
    TlsOccupation next{s.tls_out, s.tls_out == tls.state ? tls.last_update : k};
    tls = relax_between_sweeps(config, next, seed, k);
  }
  return traj;
}

char level_letter(Level l) {
  switch (l) {
    case Level::a: return 'a';
    case Level::b: return 'b';
    case Level::c: return 'c';
  }
  return '?';
}

Level level_from_letter(char c) {
  switch (c) {
    case 'a': return Level::a;
    case 'b': return Level::b;
    case 'c': return Level::c;
    default: throw DataError(std::string("unknown escape level '") + c + "'");
  }
}

}  // namespace qjump

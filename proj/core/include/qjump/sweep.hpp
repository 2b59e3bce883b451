#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qjump/constants.hpp"
#include "qjump/propagator.hpp"
#include "qjump/rng.hpp"
#include "qjump/system.hpp"

namespace qjump {

enum class TlsState : std::uint8_t { g = 0, e = 1 };

struct TlsOccupation {
  TlsState state = TlsState::g;
  std::size_t last_update = 0;
};

struct SwitchingEvent {
  std::size_t sweep_index = 0;
  double time = 0.0;               // absolute, s
  double switching_current = 0.0;  // A
  Level level = Level::a;
  bool ramp_exhausted = false;
};

struct Trajectory {
  std::vector<SwitchingEvent> events;
  std::vector<TlsState> tls_in;  // TLS state at the start of each sweep
  double period = 0.01;
  std::uint64_t seed = 0;
  std::string digest;
  std::string mode = "full";
  std::string provenance;  // free-form header line, e.g. the producing command

  std::vector<double> currents() const;
};

struct SweepOutcome {
  SwitchingEvent event;
  TlsOccupation tls;
  double time_in_sweep = 0.0;
};

struct EngineOptions {
  // Sub-steps are added until omega_10 changes by at most this much per step.
  double max_detuning_step = kTwoPi * 0.5e6;
  // and until max(Gamma) * h <= this.
  double max_decay_step = 2.0;
  // RK4 phase budget per step for the lab-frame table.
  double lab_phase_step = 0.05;
};

// Precomputes one propagator per ramp interval; sweeps then cost one 3x3
// product and four quadratic forms per interval.
class SweepEngine {
 public:
  explicit SweepEngine(const SystemConfig& config, EngineOptions options = {});

  SweepOutcome run_sweep(TlsOccupation tls_in, UniformStream& stream, std::size_t sweep_index) const;

  const SystemConfig& config() const { return config_; }
  std::size_t intervals() const { return table_.size(); }
  // First interval treated as certain switching (past the shallow-well bias).
  std::size_t saturated_from() const { return saturated_from_; }
  std::size_t substeps() const { return substeps_; }

 private:
  SystemConfig config_;
  std::vector<Propagator> table_;
  std::size_t saturated_from_ = 0;
  std::size_t substeps_ = 0;
};

// Inter-sweep relaxation draw for the gap after sweep `sweep_index`.
TlsOccupation relax_between_sweeps(const SystemConfig& config, TlsOccupation tls,
                                   std::uint64_t seed, std::size_t sweep_index);

// Worker count from QJUMP_WORKERS, else 1.
unsigned default_workers();

Trajectory run_trajectory(const SweepEngine& engine, std::size_t n_sweeps, std::uint64_t seed,
                          unsigned workers = 1);
Trajectory run_trajectory(const SystemConfig& config, std::size_t n_sweeps, std::uint64_t seed,
                          unsigned workers = 1);

struct CalibrationSample {
  Level level = Level::a;
  double switching_current = 0.0;
  double time_in_sweep = 0.0;
  TlsState tls_out = TlsState::g;
  bool ramp_exhausted = false;
};

// Outcome samples of full-dynamics sweeps, one list per TLS input state.
struct CalibrationTable {
  std::array<std::vector<CalibrationSample>, 2> samples;
  std::string digest;

  bool complete() const { return !samples[0].empty() && !samples[1].empty(); }
  const std::vector<CalibrationSample>& branch(TlsState s) const {
    return samples[static_cast<int>(s)];
  }
};

CalibrationTable calibrate(const SweepEngine& engine, std::size_t per_branch, std::uint64_t seed,
                           unsigned workers = 1);

// Surrogate: each sweep resamples a calibrated outcome for its TLS input,
// with the same inter-sweep relaxation as the full mode.
Trajectory run_fast_rate_mode(const SystemConfig& config, const CalibrationTable& table,
                              std::size_t n_sweeps, std::uint64_t seed);

char level_letter(Level l);
Level level_from_letter(char c);

}  // namespace qjump

#pragma once

#include <cstddef>
#include <cstdint>

#include "qjump/hamiltonian.hpp"
#include "qjump/junction.hpp"

namespace qjump {

// Saw-tooth ramp: I_b rises linearly from start to end within ramp_time,
// once per period. Each sweep is cut into `intervals` equal intervals.
struct RampConfig {
  double start = 0.0;         // A
  double end = 36.2e-6;       // A
  double ramp_time = 7.24e-6; // s
  double period = 0.01;       // s
  std::size_t intervals = 10000;

  void validate() const;
  double interval_duration() const { return ramp_time / static_cast<double>(intervals); }
  double bias_at(double t) const { return start + (end - start) * (t / ramp_time); }
  // Midpoint bias of interval k.
  double interval_bias(std::size_t k) const {
    return bias_at((static_cast<double>(k) + 0.5) * interval_duration());
  }
};

enum class SimulationMode { full, fast_rate };

struct SystemConfig {
  JunctionParams junction;
  TlsParams tls;
  DriveParams drive;
  EscapeModel escape;
  RampConfig ramp;
  double relaxation = 0.6e6;          // gamma_ba, 1/s
  double tls_lifetime = 1.0 / 2.38;   // s
  Frame frame = Frame::rotating;
  SimulationMode mode = SimulationMode::full;
  std::uint64_t seed = 1;
  std::size_t sweeps = 10000;
  std::size_t calibration_sweeps = 2000;  // per TLS branch, fast-rate mode

  void validate() const;

  // Hamiltonian parameters at a bias below the shallow-well bias. Couplings
  // follow omega_10(I_b) through delta_10; rates come from escape_rates with
  // the TLS in |g> (|c> carries its own rate).
  HamiltonianSpec hamiltonian_at(double bias) const;
};

// Built-in copy of configs/reference.cfg.
SystemConfig reference_config();

}  // namespace qjump

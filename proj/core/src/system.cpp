#include "qjump/system.hpp"

#include <cmath>

#include "qjump/constants.hpp"
#include "qjump/errors.hpp"

namespace qjump {

void RampConfig::validate() const {
  if (!(start >= 0.0) || !(start < end)) throw ConfigError("ramp.start must be >= 0 and below ramp.end");
  if (!(ramp_time > 0.0)) throw ConfigError("ramp.ramp_time must be positive");
  if (!(period >= ramp_time)) throw ConfigError("ramp.period must be at least ramp.ramp_time");
  if (intervals < 1000) throw ConfigError("ramp.intervals must be at least 1000");
}

void SystemConfig::validate() const {
  junction.validate();
  tls.validate(junction);
  drive.validate();
  escape.validate(junction);
  ramp.validate();
  if (!(relaxation >= 0.0) || !std::isfinite(relaxation))
    throw ConfigError("junction.relaxation must be finite and >= 0");
  if (!(tls_lifetime > 0.0)) throw ConfigError("tls.lifetime must be positive");
  if (sweeps < 1) throw ConfigError("simulation.sweeps must be at least 1");
  if (mode == SimulationMode::fast_rate && calibration_sweeps < 1)
    throw ConfigError("simulation.calibration_sweeps must be at least 1 in fast-rate mode");
}

HamiltonianSpec SystemConfig::hamiltonian_at(double bias) const {
  HamiltonianSpec s;
  s.omega_10 = omega_10(junction, bias);
  s.omega_r = tls.level_spacing;
  s.omega_drive = drive.frequency;
  const double d10 = coupling_delta10(junction, s.omega_10);
  s.omega_c = omega_c(tls, d10);
  s.omega_m = omega_m(drive, d10);
  const EscapeRates r = escape_rates(junction, escape, bias, false);
  s.gamma_a = r.a;
  s.gamma_b = r.b;
  s.gamma_c = r.c;
  s.gamma_ba = relaxation;
  return s;
}

SystemConfig reference_config() {
  SystemConfig c;
  c.tls.level_spacing = kTwoPi * 8.7e9;
  c.tls.asymmetry = asymmetry_for_coupling(c.junction, kTwoPi * 200e6, c.tls.level_spacing);
  c.drive.frequency = kTwoPi * 9.02e9;
  c.drive.amplitude = amplitude_for_rabi(c.junction, kTwoPi * 50e6, c.drive.frequency);
  c.escape.tls_shift = 200e-9;
  return c;
}

}  // namespace qjump

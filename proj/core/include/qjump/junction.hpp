#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace qjump {

struct JunctionParams {
  double critical_current = 36e-6;  // A
  double capacitance = 4e-12;       // F

  void validate() const;
};

struct TlsParams {
  double level_spacing = 0.0;  // omega_r, rad/s
  double asymmetry = 0.0;      // I_c^A - I_c^B, A

  void validate(const JunctionParams& j) const;
};

struct DriveParams {
  double frequency = 0.0;  // rad/s
  double amplitude = 0.0;  // I_m, A

  void validate() const;
};

// Ground-state tunnelling law Gamma_0 = sqrt(prefactor * s) (omega_p / 2pi) exp(-s)
// with s = exponent * dU / (hbar omega_p).
struct EscapeModel {
  double excited_ratio = 500.0;  // Gamma_1 / Gamma_0
  double tls_shift = 0.0;        // effective I_c reduction while the TLS is excited, A
  double prefactor = 120.0 * std::numbers::pi;
  double exponent = 7.2;

  void validate(const JunctionParams& j) const;
};

struct EscapeRates {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct DressedPoint {
  double bias = 0.0;
  double lower = 0.0;  // rad/s
  double upper = 0.0;  // rad/s
  double gap() const { return upper - lower; }
};

double plasma_frequency(const JunctionParams& j, double bias);
double barrier_height(const JunctionParams& j, double bias);
double omega_10(const JunctionParams& j, double bias);
double coupling_delta10(const JunctionParams& j, double omega10);
double omega_c(const TlsParams& tls, double delta10);
double omega_m(const DriveParams& drive, double delta10);

// Bias at which dU = hbar omega_p; omega_10 exists strictly below it.
double shallow_well_bias(const JunctionParams& j);
// Inverse of omega_10 on [0, shallow_well_bias).
double bias_for_omega_10(const JunctionParams& j, double omega10);

double ground_escape_rate(const JunctionParams& j, const EscapeModel& em, double bias);
EscapeRates escape_rates(const JunctionParams& j, const EscapeModel& em, double bias,
                         bool tls_excited);

// Couplings are referenced at a chosen level spacing: Omega_c at the
// anticrossing (omega_10 = omega_r), Omega_m at the drive frequency.
double omega_c_at(const JunctionParams& j, const TlsParams& tls, double omega10);
double omega_m_at(const JunctionParams& j, const DriveParams& drive, double omega10);
double asymmetry_for_coupling(const JunctionParams& j, double coupling, double omega10);
double amplitude_for_rabi(const JunctionParams& j, double rabi, double omega10);

std::vector<DressedPoint> dressed_spectrum(const JunctionParams& j, const TlsParams& tls,
                                           std::span<const double> bias_grid);

}  // namespace qjump

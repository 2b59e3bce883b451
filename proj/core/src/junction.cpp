#include "qjump/junction.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "qjump/constants.hpp"
#include "qjump/errors.hpp"

namespace qjump {

namespace {

void check_bias(const JunctionParams& j, double bias, bool allow_critical) {
  const bool above = allow_critical ? bias > j.critical_current : bias >= j.critical_current;
  if (!std::isfinite(bias) || bias < 0.0 || above) {
    throw DomainError("bias current " + std::to_string(bias) +
                      " A outside [0, I_c) for I_c = " + std::to_string(j.critical_current) + " A");
  }
}

template <class F>
double solve_decreasing(F f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

}  // namespace

void JunctionParams::validate() const {
  if (!(critical_current > 0.0) || !std::isfinite(critical_current))
    throw ConfigError("junction.critical_current must be positive");
  if (!(capacitance > 0.0) || !std::isfinite(capacitance))
    throw ConfigError("junction.capacitance must be positive");
}

void TlsParams::validate(const JunctionParams& j) const {
  if (!(level_spacing > 0.0) || !std::isfinite(level_spacing))
    throw ConfigError("tls.level_spacing must be positive");
  if (!(std::abs(asymmetry) < j.critical_current))
    throw ConfigError("tls.asymmetry must be smaller than the critical current");
}

void DriveParams::validate() const {
  if (!(frequency > 0.0) || !std::isfinite(frequency))
    throw ConfigError("drive.frequency must be positive");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw ConfigError("drive.amplitude must be non-negative");
}

void EscapeModel::validate(const JunctionParams& j) const {
  if (!(excited_ratio > 1.0)) throw ConfigError("escape.excited_ratio must exceed 1");
  if (!(tls_shift >= 0.0) || !(tls_shift < j.critical_current))
    throw ConfigError("escape.tls_shift must lie in [0, I_c)");
  if (!(prefactor > 0.0)) throw ConfigError("escape.prefactor must be positive");
  if (!(exponent > 0.0)) throw ConfigError("escape.exponent must be positive");
}

double plasma_frequency(const JunctionParams& j, double bias) {
  check_bias(j, bias, false);
  const double x = bias / j.critical_current;
  const double w0 = std::sqrt(kTwoPi * j.critical_current / (kFluxQuantum * j.capacitance));
  return w0 * std::pow(1.0 - x * x, 0.25);
}

double barrier_height(const JunctionParams& j, double bias) {
  check_bias(j, bias, true);
  const double x = bias / j.critical_current;
  const double ej = j.critical_current * kFluxQuantum / kTwoPi;
  return (2.0 * std::sqrt(2.0) / 3.0) * ej * std::pow(1.0 - x, 1.5);
}

double omega_10(const JunctionParams& j, double bias) {
  const double wp = plasma_frequency(j, bias);
  const double du = barrier_height(j, bias);
  const double quantum = kHbar * wp;
  if (!(du > quantum)) {
    throw ShallowWellError("well at I_b = " + std::to_string(bias) +
                           " A holds no bound level (dU <= hbar omega_p)");
  }
  return wp * (1.0 - 5.0 * quantum / (36.0 * du));
}

double coupling_delta10(const JunctionParams& j, double omega10) {
  if (!(omega10 > 0.0) || !std::isfinite(omega10))
    throw DomainError("coupling_delta10 needs a positive level spacing");
  return (kTwoPi / kFluxQuantum) * std::sqrt(kHbar / (2.0 * omega10 * j.capacitance));
}

double omega_c(const TlsParams& tls, double delta10) {
  return tls.asymmetry * kFluxQuantum * delta10 / (2.0 * kTwoPi * kHbar);
}

double omega_m(const DriveParams& drive, double delta10) {
  return kFluxQuantum * delta10 * drive.amplitude / (kTwoPi * kHbar);
}

double shallow_well_bias(const JunctionParams& j) {
  j.validate();
  auto excess = [&](double bias) {
    return barrier_height(j, bias) / (kHbar * plasma_frequency(j, bias)) - 1.0;
  };
  const double hi = j.critical_current * (1.0 - 1e-12);
  if (excess(0.0) <= 0.0) return 0.0;
  return solve_decreasing(excess, 0.0, hi);
}

double bias_for_omega_10(const JunctionParams& j, double omega10) {
  const double top = shallow_well_bias(j);
  // omega_10 has a finite limit at the shallow bias; stay a hair below it.
  const double hi = top * (1.0 - 1e-13);
  const double w_lo = omega_10(j, 0.0);
  const double w_hi = omega_10(j, hi);
  if (!(omega10 <= w_lo && omega10 >= w_hi)) {
    throw DomainError("level spacing " + std::to_string(omega10) +
                      " rad/s not reachable below the shallow-well bias");
  }
  return solve_decreasing([&](double b) { return omega_10(j, b) - omega10; }, 0.0, hi);
}

double ground_escape_rate(const JunctionParams& j, const EscapeModel& em, double bias) {
  const double wp = plasma_frequency(j, bias);
  const double s = em.exponent * barrier_height(j, bias) / (kHbar * wp);
  return std::sqrt(em.prefactor * s) * (wp / kTwoPi) * std::exp(-s);
}

EscapeRates escape_rates(const JunctionParams& j, const EscapeModel& em, double bias,
                         bool tls_excited) {
  check_bias(j, bias, false);
  JunctionParams shifted = j;
  shifted.critical_current = j.critical_current - em.tls_shift;

  // Past the shallow-well bias the level is no longer bound and the WKB law
  // turns over; hold the rate at its value there so it stays monotone.
  auto rate = [&](const JunctionParams& jj) {
    const double top = shallow_well_bias(jj);
    return ground_escape_rate(jj, em, std::min(bias, top));
  };

  const JunctionParams& base = tls_excited ? shifted : j;
  const double g0 = rate(base);
  EscapeRates r;
  r.a = g0;
  r.b = em.excited_ratio * g0;
  r.c = rate(shifted);
  return r;
}

double omega_c_at(const JunctionParams& j, const TlsParams& tls, double omega10) {
  return omega_c(tls, coupling_delta10(j, omega10));
}

double omega_m_at(const JunctionParams& j, const DriveParams& drive, double omega10) {
  return omega_m(drive, coupling_delta10(j, omega10));
}

double asymmetry_for_coupling(const JunctionParams& j, double coupling, double omega10) {
  return coupling * 2.0 * kTwoPi * kHbar / (kFluxQuantum * coupling_delta10(j, omega10));
}

double amplitude_for_rabi(const JunctionParams& j, double rabi, double omega10) {
  return rabi * kTwoPi * kHbar / (kFluxQuantum * coupling_delta10(j, omega10));
}

std::vector<DressedPoint> dressed_spectrum(const JunctionParams& j, const TlsParams& tls,
                                           std::span<const double> bias_grid) {
  const double wr = tls.level_spacing;
  const double oc = omega_c_at(j, tls, wr);
  std::vector<DressedPoint> out;
  out.reserve(bias_grid.size());
  for (double bias : bias_grid) {
    const double w10 = omega_10(j, bias);
    const double mean = 0.5 * (w10 + wr);
    const double half = std::hypot(0.5 * (w10 - wr), oc);
    out.push_back({bias, mean - half, mean + half});
  }
  return out;
}

}  // namespace qjump

#include "qjump/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr long kMaxSubsteps = 50'000'000;

Matrix3c hamiltonian_at(const HamiltonianSpec& spec, Frame frame, double t) {
  return frame == Frame::lab ? build_lab(spec, t) : build_rotating(spec, t);
}

std::array<double, kChannelCount> flow_rates(const HamiltonianSpec& spec, const Vector3c& psi) {
  const double pa = std::norm(psi[0]);
  const double pb = std::norm(psi[1]);
  const double pc = std::norm(psi[2]);
  return {2.0 * spec.gamma_a * pa, 2.0 * spec.gamma_b * pb, 2.0 * spec.gamma_c * pc,
          2.0 * spec.gamma_ba * pb};
}

bool finite(const Vector3c& v) {
  for (int i = 0; i < 3; ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

}  // namespace

StateVector StateVector::basis(Level l, Frame frame, double time) {
  StateVector s;
  s.amplitudes.setZero();
  s.amplitudes[static_cast<int>(l)] = 1.0;
  s.frame = frame;
  s.time = time;
  return s;
}

void HamiltonianSpec::validate() const {
  for (double r : {gamma_a, gamma_b, gamma_c, gamma_ba}) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("decay rates must be finite and >= 0");
  }
  for (double w : {omega_10, omega_r, omega_drive, omega_c, omega_m}) {
    if (!std::isfinite(w)) throw DomainError("frequencies must be finite");
  }
}

Matrix3c build_lab(const HamiltonianSpec& s, double t) {
  const Complex ab = s.omega_c - s.omega_m * std::cos(s.omega_drive * t);
  Matrix3c h;
  h << -kI * s.gamma_a, ab, 0.0,
       ab, s.omega_10 - kI * (s.gamma_b + s.gamma_ba), -s.omega_c,
       0.0, -s.omega_c, s.omega_r - kI * s.gamma_c;
  return h;
}

Matrix3c build_rotating(const HamiltonianSpec& s, double t) {
  const double d = s.detuning();
  const Complex ab = -0.5 * s.omega_m;
  const Complex phase = std::polar(1.0, -d * t);
  Matrix3c h;
  h << -kI * s.gamma_a, ab, 0.0,
       ab, d - kI * (s.gamma_b + s.gamma_ba), -s.omega_c * phase,
       0.0, -s.omega_c * std::conj(phase), s.tls_detuning() - kI * s.gamma_c;
  return h;
}

Matrix3c build_drive_frame(const HamiltonianSpec& s) {
  const Complex ab = -0.5 * s.omega_m;
  Matrix3c h;
  h << -kI * s.gamma_a, ab, 0.0,
       ab, s.detuning() - kI * (s.gamma_b + s.gamma_ba), -s.omega_c,
       0.0, -s.omega_c, (s.omega_r - s.omega_drive) - kI * s.gamma_c;
  return h;
}

double hamiltonian_norm_bound(const HamiltonianSpec& s, Frame frame) {
  const double oc = std::abs(s.omega_c);
  const double om = std::abs(s.omega_m);
  if (frame == Frame::lab) {
    const double ab = oc + om;
    return std::max({s.gamma_a + ab,
                     std::abs(s.omega_10) + s.gamma_b + s.gamma_ba + ab + oc,
                     std::abs(s.omega_r) + s.gamma_c + oc});
  }
  return std::max({s.gamma_a + 0.5 * om,
                   std::abs(s.detuning()) + s.gamma_b + s.gamma_ba + 0.5 * om + oc,
                   std::abs(s.tls_detuning()) + s.gamma_c + oc});
}

StepResult evolve_step(const StateVector& psi, const HamiltonianSpec& spec, double dt,
                       double max_phase) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw StepSizeError("evolve_step needs a finite positive dt, got " + std::to_string(dt));
  }
  spec.validate();
  if (!finite(psi.amplitudes)) throw NonFiniteError("non-finite input amplitudes");

  const double bound = hamiltonian_norm_bound(spec, psi.frame);
  const double want = std::ceil(dt * bound / max_phase);
  if (!(want <= static_cast<double>(kMaxSubsteps))) {
    throw StepSizeError("dt = " + std::to_string(dt) + " would need more than " +
                        std::to_string(kMaxSubsteps) + " substeps");
  }
  const int n = std::max(1, static_cast<int>(want));
  const double h = dt / n;

  Vector3c y = psi.amplitudes;
  double norm = y.squaredNorm();
  double t = psi.time;
  ChannelProbabilities acc;

  auto deriv = [&](double tt, const Vector3c& v) -> Vector3c {
    return -kI * (hamiltonian_at(spec, psi.frame, tt) * v);
  };

  for (int k = 0; k < n; ++k) {
    const Vector3c k1 = deriv(t, y);
    const Vector3c y2 = y + 0.5 * h * k1;
    const Vector3c k2 = deriv(t + 0.5 * h, y2);
    const Vector3c y3 = y + 0.5 * h * k2;
    const Vector3c k3 = deriv(t + 0.5 * h, y3);
    const Vector3c y4 = y + h * k3;
    const Vector3c k4 = deriv(t + h, y4);

    const auto f1 = flow_rates(spec, y);
    const auto f2 = flow_rates(spec, y2);
    const auto f3 = flow_rates(spec, y3);
    const auto f4 = flow_rates(spec, y4);
    double flow = 0.0;
    std::array<double, kChannelCount> dw{};
    for (int c = 0; c < kChannelCount; ++c) {
      dw[c] = h / 6.0 * (f1[c] + 2.0 * f2[c] + 2.0 * f3[c] + f4[c]);
      flow += dw[c];
    }

    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(y)) throw NonFiniteError("amplitudes became non-finite at t = " + std::to_string(t));

    // Pin the norm to the integrated outflow. RK4 alone damps a unitary
    // evolution by O(h^6) per step, which would otherwise show up as loss
    // that no channel accounts for.
    double target = norm - flow;
    if (target < 0.0) {
      for (auto& w : dw) w *= norm / flow;
      target = 0.0;
    }
    const double current = y.squaredNorm();
    if (current > 0.0) y *= std::sqrt(target / current);
    for (int c = 0; c < kChannelCount; ++c) acc.p[c] += dw[c];
    norm = target;
    t = psi.time + (k + 1) * h;
  }

  StepResult out;
  out.state.amplitudes = y;
  out.state.frame = psi.frame;
  out.state.time = psi.time + dt;
  out.channels = acc;
  out.substeps = n;
  return out;
}

StateVector rk4_fixed(const StateVector& psi, const HamiltonianSpec& spec, double dt, int n) {
  if (!(dt > 0.0) || n < 1) throw StepSizeError("rk4_fixed needs dt > 0 and n >= 1");
  const double h = dt / n;
  Vector3c y = psi.amplitudes;
  auto deriv = [&](double tt, const Vector3c& v) -> Vector3c {
    return -kI * (hamiltonian_at(spec, psi.frame, tt) * v);
  };
  for (int k = 0; k < n; ++k) {
    const double t = psi.time + k * h;
    const Vector3c k1 = deriv(t, y);
    const Vector3c k2 = deriv(t + 0.5 * h, y + 0.5 * h * k1);
    const Vector3c k3 = deriv(t + 0.5 * h, y + 0.5 * h * k2);
    const Vector3c k4 = deriv(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!finite(y)) throw NonFiniteError("amplitudes became non-finite");
  StateVector out = psi;
  out.amplitudes = y;
  out.time = psi.time + dt;
  return out;
}

JumpOutcome apply_jump(const StateVector& psi, Channel channel) {
  switch (channel) {
    case Channel::escape_a: return Switched{Level::a};
    case Channel::escape_b: return Switched{Level::b};
    case Channel::escape_c: return Switched{Level::c};
    case Channel::relax_ba: return StateVector::basis(Level::a, psi.frame, psi.time);
  }
  throw DomainError("apply_jump: invalid channel " + std::to_string(static_cast<int>(channel)));
}

}  // namespace qjump

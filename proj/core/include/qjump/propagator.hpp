#pragma once

#include <array>
#include <functional>

#include "qjump/hamiltonian.hpp"

namespace qjump {

// Evolution over a fixed interval: psi(t+T) = U psi(t), and the probability
// carried out by channel i is psi^dag Q_i psi with Q_i = int U(s)^dag R_i U(s) ds,
// R_i being the channel's rate projector (2 Gamma_i E_ii).
struct Propagator {
  Matrix3c evolution = Matrix3c::Identity();
  std::array<Matrix3c, kChannelCount> channels = {Matrix3c::Zero(), Matrix3c::Zero(),
                                                  Matrix3c::Zero(), Matrix3c::Zero()};

  // this first, then next.
  Propagator then(const Propagator& next) const;
};

struct ChannelRates {
  std::array<double, kChannelCount> gamma{};  // Gamma_a, Gamma_b, Gamma_c, gamma_ba
  static ChannelRates from(const HamiltonianSpec& s) {
    return {{s.gamma_a, s.gamma_b, s.gamma_c, s.gamma_ba}};
  }
};

// Constant H over dt, by matrix exponentials (Van Loan block form for the
// channel integrals). Keep max(Gamma) * dt modest; callers split otherwise.
Propagator exact_propagator(const Matrix3c& h, const ChannelRates& rates, double dt);

// Time-dependent H(t) on [t0, t0+dt] with n RK4 steps of the coupled
// (U, Q_i) equations. Used for the lab frame and for cross-checks.
Propagator integrate_propagator(const std::function<Matrix3c(double)>& h,
                                const ChannelRates& rates, double t0, double dt, int n);

struct PropagatedState {
  Vector3c amplitudes;
  ChannelProbabilities channels;
};

// Applies the propagator; channel probabilities are scaled so that their
// sum equals the exact norm loss.
PropagatedState propagate(const Propagator& p, const Vector3c& psi);

}  // namespace qjump

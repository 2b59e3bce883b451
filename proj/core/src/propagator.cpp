#include "qjump/propagator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "qjump/errors.hpp"

namespace qjump {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kChannelLevel[kChannelCount] = {0, 1, 2, 1};

using Matrix6c = Eigen::Matrix<Complex, 6, 6>;

}  // namespace

Propagator Propagator::then(const Propagator& next) const {
  Propagator out;
  out.evolution = next.evolution * evolution;
  for (int c = 0; c < kChannelCount; ++c) {
    out.channels[c] = channels[c] + evolution.adjoint() * next.channels[c] * evolution;
  }
  return out;
}

Propagator exact_propagator(const Matrix3c& h, const ChannelRates& rates, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StepSizeError("propagator needs dt > 0");
  const Matrix3c a = -kI * h;
  Propagator out;

  // exp([[-A^dag, E], [0, A]] dt) has top-right block int e^{-A^dag(dt-s)} E e^{A s} ds,
  // and U^dag times that block is int U(s)^dag E U(s) ds.
  std::array<Matrix3c, 3> level_integrals;
  bool have_u = false;
  for (int level = 0; level < 3; ++level) {
    bool used = false;
    for (int c = 0; c < kChannelCount; ++c)
      if (kChannelLevel[c] == level && rates.gamma[c] > 0.0) used = true;
    if (!used) {
      level_integrals[level].setZero();
      continue;
    }
    Matrix6c block = Matrix6c::Zero();
    block.topLeftCorner<3, 3>() = -a.adjoint() * dt;
    block(level, 3 + level) = dt;
    block.bottomRightCorner<3, 3>() = a * dt;
    const Matrix6c e = block.exp();
    if (!have_u) {
      out.evolution = e.bottomRightCorner<3, 3>();
      have_u = true;
    }
    level_integrals[level] = out.evolution.adjoint() * e.topRightCorner<3, 3>();
  }
  if (!have_u) out.evolution = (a * dt).exp();
  for (int c = 0; c < kChannelCount; ++c) {
    out.channels[c] = (2.0 * rates.gamma[c]) * level_integrals[kChannelLevel[c]];
  }
  if (!out.evolution.allFinite()) throw NonFiniteError("non-finite interval propagator");
  return out;
}

Propagator integrate_propagator(const std::function<Matrix3c(double)>& h,
                                const ChannelRates& rates, double t0, double dt, int n) {
  if (!(dt > 0.0) || n < 1) throw StepSizeError("integrate_propagator needs dt > 0, n >= 1");
  const double step = dt / n;

  struct State {
    Matrix3c u;
    std::array<Matrix3c, 3> q;  // per-level integrals of U^dag E_ii U
  };
  auto deriv = [&](double t, const State& s) {
    State d;
    d.u = -kI * (h(t) * s.u);
    for (int l = 0; l < 3; ++l) d.q[l] = s.u.row(l).adjoint() * s.u.row(l);
    return d;
  };
  auto axpy = [](const State& s, double w, const State& d) {
    State r;
    r.u = s.u + w * d.u;
    for (int l = 0; l < 3; ++l) r.q[l] = s.q[l] + w * d.q[l];
    return r;
  };

  State s{Matrix3c::Identity(), {Matrix3c::Zero(), Matrix3c::Zero(), Matrix3c::Zero()}};
  for (int k = 0; k < n; ++k) {
    const double t = t0 + k * step;
    const State k1 = deriv(t, s);
    const State k2 = deriv(t + 0.5 * step, axpy(s, 0.5 * step, k1));
    const State k3 = deriv(t + 0.5 * step, axpy(s, 0.5 * step, k2));
    const State k4 = deriv(t + step, axpy(s, step, k3));
    s.u += step / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    for (int l = 0; l < 3; ++l) s.q[l] += step / 6.0 * (k1.q[l] + 2.0 * k2.q[l] + 2.0 * k3.q[l] + k4.q[l]);
  }

  Propagator out;
  out.evolution = s.u;
  for (int c = 0; c < kChannelCount; ++c) {
    out.channels[c] = (2.0 * rates.gamma[c]) * s.q[kChannelLevel[c]];
  }
  if (!out.evolution.allFinite()) throw NonFiniteError("non-finite interval propagator");
  return out;
}

PropagatedState propagate(const Propagator& p, const Vector3c& psi) {
  PropagatedState out;
  out.amplitudes = p.evolution * psi;
  double sum = 0.0;
  for (int c = 0; c < kChannelCount; ++c) {
    const double v = std::max(0.0, psi.dot(p.channels[c] * psi).real());
    out.channels.p[c] = v;
    sum += v;
  }
  const double loss = std::max(0.0, psi.squaredNorm() - out.amplitudes.squaredNorm());
  if (sum > 0.0) {
    const double scale = loss / sum;
    for (double& v : out.channels.p) v *= scale;
  }
  return out;
}

}  // namespace qjump

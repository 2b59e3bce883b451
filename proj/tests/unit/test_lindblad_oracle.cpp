// Dense master-equation reference for the stochastic unravelling. Escape
// channels feed absorbing sink populations; gamma_ba feeds |a>.

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "qjump/constants.hpp"
#include "qjump/propagator.hpp"
#include "qjump/rng.hpp"

using namespace qjump;

namespace {

struct Ensemble {
  Matrix3c rho = Matrix3c::Zero();
  std::array<double, 3> sink{};  // escaped from a, b, c
};

Ensemble lindblad(const HamiltonianSpec& s, const Matrix3c& rho0, double t_end, int steps) {
  const Complex i{0.0, 1.0};
  const Matrix3c h = build_drive_frame(s);
  const std::array<double, 3> g{s.gamma_a, s.gamma_b, s.gamma_c};
  auto deriv = [&](const Ensemble& e) {
    Ensemble d;
    d.rho = -i * (h * e.rho - e.rho * h.adjoint());
    d.rho(0, 0) += 2.0 * s.gamma_ba * e.rho(1, 1);
    for (int l = 0; l < 3; ++l) d.sink[l] = 2.0 * g[l] * e.rho(l, l).real();
    return d;
  };
  auto axpy = [](const Ensemble& e, double w, const Ensemble& d) {
    Ensemble r;
    r.rho = e.rho + w * d.rho;
    for (int l = 0; l < 3; ++l) r.sink[l] = e.sink[l] + w * d.sink[l];
    return r;
  };
  Ensemble e;
  e.rho = rho0;
  const double h_step = t_end / steps;
  for (int k = 0; k < steps; ++k) {
    const auto k1 = deriv(e);
    const auto k2 = deriv(axpy(e, 0.5 * h_step, k1));
    const auto k3 = deriv(axpy(e, 0.5 * h_step, k2));
    const auto k4 = deriv(axpy(e, h_step, k3));
    e.rho += h_step / 6.0 * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
    for (int l = 0; l < 3; ++l) e.sink[l] += h_step / 6.0 * (k1.sink[l] + 2.0 * k2.sink[l] + 2.0 * k3.sink[l] + k4.sink[l]);
  }
  return e;
}

HamiltonianSpec spec() {
  HamiltonianSpec s;
  s.omega_drive = kTwoPi * 9.02e9;
  s.omega_10 = kTwoPi * 9.02e9;
  s.omega_r = kTwoPi * 9.0e9;
  s.omega_c = kTwoPi * 5e6;
  s.omega_m = kTwoPi * 10e6;
  s.gamma_a = 2e5;
  s.gamma_b = 1e6;
  s.gamma_c = 5e5;
  s.gamma_ba = 3e6;
  return s;
}

}  // namespace

TEST(LindbladOracle, TracePlusSinksConserved) {
  Matrix3c rho0 = Matrix3c::Zero();
  rho0(0, 0) = 1.0;
  const auto e = lindblad(spec(), rho0, 1e-6, 4000);
  EXPECT_NEAR(e.rho.trace().real() + e.sink[0] + e.sink[1] + e.sink[2], 1.0, 1e-10);
}

TEST(LindbladOracle, NoJumpBranchIsNonHermitianEvolution) {
  // Without recycling, rho stays pure and equals psi psi^dag from the
  // propagator.
  auto s = spec();
  s.gamma_ba = 0.0;
  Vector3c psi(Complex(0.8, 0.0), Complex(0.0, 0.6), 0.0);
  const auto e = lindblad(s, psi * psi.adjoint(), 4e-7, 16000);
  const auto p = exact_propagator(build_drive_frame(s), ChannelRates::from(s), 4e-7);
  const auto out = propagate(p, psi);
  EXPECT_LT((e.rho - out.amplitudes * out.amplitudes.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(e.sink[0], out.channels[Channel::escape_a], 1e-10);
  EXPECT_NEAR(e.sink[1], out.channels[Channel::escape_b], 1e-10);
  EXPECT_NEAR(e.sink[2], out.channels[Channel::escape_c], 1e-10);
}

TEST(LindbladOracle, JumpUnravellingMatchesEnsemble) {
  // Same per-interval rule as the sweep engine: one uniform per interval,
  // escape, else collapse to |a>, else renormalise.
  const auto s = spec();
  const double dt = 2e-9;
  const int intervals = 500;
  const auto p = exact_propagator(build_drive_frame(s), ChannelRates::from(s), dt);
  const int runs = 40000;
  std::array<int, 3> escaped{};
  std::array<double, 3> pop{};
  for (int run = 0; run < runs; ++run) {
    auto stream = rng_stream(11, run);
    Vector3c psi(1.0, 0.0, 0.0);
    bool alive = true;
    for (int k = 0; k < intervals && alive; ++k) {
      const auto out = propagate(p, psi);
      const double r = stream.uniform();
      double acc = 0.0;
      for (int l = 0; l < 3 && alive; ++l) {
        acc += out.channels.p[l];
        if (r < acc) {
          ++escaped[l];
          alive = false;
        }
      }
      if (!alive) break;
      if (r < acc + out.channels[Channel::relax_ba]) {
        psi = Vector3c(1.0, 0.0, 0.0);
      } else {
        psi = out.amplitudes / out.amplitudes.norm();
      }
    }
    if (alive)
      for (int l = 0; l < 3; ++l) pop[l] += std::norm(psi[l]);
  }
  Matrix3c rho0 = Matrix3c::Zero();
  rho0(0, 0) = 1.0;
  const auto e = lindblad(s, rho0, dt * intervals, 20000);
  for (int l = 0; l < 3; ++l) {
    const double want = e.sink[l];
    const double sigma = std::sqrt(want * (1 - want) / runs);
    EXPECT_NEAR(static_cast<double>(escaped[l]) / runs, want, 4 * sigma + 1e-3) << "sink " << l;
    EXPECT_NEAR(pop[l] / runs, e.rho(l, l).real(), 0.01) << "level " << l;
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "qjump/constants.hpp"
#include "qjump/errors.hpp"
#include "qjump/junction.hpp"

using namespace qjump;

namespace {

const JunctionParams kJ{36e-6, 4e-12};
constexpr double kTol = 1e-10;

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST(PlasmaFrequency, ZeroBiasIsBareFormula) {
  const double want = std::sqrt(kTwoPi * 36e-6 / (kFluxQuantum * 4e-12));
  EXPECT_DOUBLE_EQ(plasma_frequency(kJ, 0.0), want);
}

TEST(PlasmaFrequency, MatchesHighPrecisionOracle) {
  const oracle::Real ic("36e-6"), c("4e-12");
  for (const char* b : {"0", "35.5e-6", "35.55e-6", "35.63e-6", "35.9e-6"}) {
    const double bias = std::stod(b);
    EXPECT_LT(oracle::rel(plasma_frequency(kJ, bias), oracle::plasma(ic, c, oracle::Real(bias))), kTol) << b;
  }
  // frozen 50-digit values
  EXPECT_LT(oracle::rel(plasma_frequency(kJ, 0.0), oracle::Real("165368721552.54820877")), kTol);
  EXPECT_LT(oracle::rel(plasma_frequency(kJ, 35.55e-6), oracle::Real("65653465707.113878249")), kTol);
  EXPECT_NEAR(plasma_frequency(kJ, 35.55e-6) / kTwoPi, 10.4e9, 0.2e9);
}

TEST(PlasmaFrequency, DomainErrors) {
  EXPECT_THROW(plasma_frequency(kJ, 36e-6), DomainError);
  EXPECT_THROW(plasma_frequency(kJ, -1e-9), DomainError);
  EXPECT_THROW(plasma_frequency(kJ, 40e-6), DomainError);
}

TEST(BarrierHeight, ValuesAndOrdering) {
  EXPECT_EQ(barrier_height(kJ, 36e-6), 0.0);
  EXPECT_LT(oracle::rel(barrier_height(kJ, 35.55e-6), oracle::Real("1.5610867249924440559e-23")), kTol);
  EXPECT_LT(oracle::rel(barrier_height(kJ, 35.50e-6), oracle::Real("1.8283665466774163876e-23")), kTol);
  EXPECT_LT(oracle::rel(barrier_height(kJ, 35.63e-6), oracle::Real("1.1638870769004972327e-23")), kTol);
  EXPECT_GT(barrier_height(kJ, 35.50e-6), barrier_height(kJ, 35.63e-6));
  EXPECT_THROW(barrier_height(kJ, 36.1e-6), DomainError);
  EXPECT_THROW(barrier_height(kJ, -1.0), DomainError);
}

TEST(Omega10, OracleAndAnharmonicity) {
  EXPECT_LT(oracle::rel(omega_10(kJ, 35.55e-6), oracle::Real("61609272021.437766085")), kTol);
  const oracle::Real ic("36e-6"), c("4e-12");
  EXPECT_LT(oracle::rel(omega_10(kJ, 35.2e-6), oracle::w10(ic, c, oracle::Real(35.2e-6))), kTol);
  for (double b : grid(0.0, 35.7e-6, 50)) EXPECT_LT(omega_10(kJ, b), plasma_frequency(kJ, b));
}

TEST(Omega10, MonotoneDecreasingOverGrid) {
  const auto g = grid(35.0e-6, 35.76e-6, 1000);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(omega_10(kJ, g[i]), omega_10(kJ, g[i - 1]));
}

TEST(Omega10, ShallowWellError) {
  const double top = shallow_well_bias(kJ);
  EXPECT_LT(oracle::rel(top, oracle::Real("3.5765037476047781615e-5")), 1e-12);
  EXPECT_NO_THROW(omega_10(kJ, top * (1 - 1e-9)));
  EXPECT_THROW(omega_10(kJ, 35.9e-6), ShallowWellError);
}

TEST(Omega10, ResonanceBiasFrozen) {
  EXPECT_LT(oracle::rel(bias_for_omega_10(kJ, kTwoPi * 9.02e9), oracle::Real("3.5646566337050785078e-5")), kTol);
  EXPECT_LT(oracle::rel(bias_for_omega_10(kJ, kTwoPi * 8.7e9), oracle::Real("3.5679395269927313105e-5")), kTol);
  EXPECT_THROW(bias_for_omega_10(kJ, kTwoPi * 40e9), DomainError);
}

TEST(Delta10, OracleAndScaling) {
  const double w = kTwoPi * 9.02e9;
  EXPECT_LT(oracle::rel(coupling_delta10(kJ, w), oracle::Real("0.046340862470699064547")), kTol);
  EXPECT_NEAR(coupling_delta10(kJ, 4 * w), 0.5 * coupling_delta10(kJ, w), 1e-15);
  const double k0 = coupling_delta10(kJ, 1e10) * std::sqrt(1e10);
  for (double x = 1e10; x <= 1e11; x *= 1.2589) {
    EXPECT_NEAR(coupling_delta10(kJ, x) * std::sqrt(x) / k0, 1.0, 1e-12);
  }
  JunctionParams other = kJ;
  other.critical_current = 20e-6;
  EXPECT_EQ(coupling_delta10(other, w), coupling_delta10(kJ, w));
  EXPECT_THROW(coupling_delta10(kJ, 0.0), DomainError);
}

TEST(OmegaC, InversionMatchesOracle) {
  const double wr = kTwoPi * 8.7e9;
  const double di = asymmetry_for_coupling(kJ, kTwoPi * 200e6, wr);
  EXPECT_LT(oracle::rel(di, oracle::Real("1.7067601492926551252e-8")), kTol);
  TlsParams tls{wr, di};
  EXPECT_NEAR(omega_c_at(kJ, tls, wr) / (kTwoPi * 200e6), 1.0, 1e-13);
  EXPECT_EQ(omega_c(TlsParams{wr, 0.0}, 0.05), 0.0);
  EXPECT_DOUBLE_EQ(omega_c(TlsParams{wr, 2 * di}, 0.05), 2 * omega_c(TlsParams{wr, di}, 0.05));
  EXPECT_LT(omega_c(TlsParams{wr, -di}, 0.05), 0.0);
}

TEST(OmegaM, InversionMatchesOracle) {
  const double w = kTwoPi * 9.02e9;
  EXPECT_LT(oracle::rel(amplitude_for_rabi(kJ, kTwoPi * 2e6, w), oracle::Real("8.6893269961913831857e-11")), kTol);
  EXPECT_LT(oracle::rel(amplitude_for_rabi(kJ, kTwoPi * 50e6, w), oracle::Real("2.1723317490478457964e-9")), kTol);
  EXPECT_EQ(omega_m(DriveParams{w, 0.0}, 0.05), 0.0);
  EXPECT_DOUBLE_EQ(omega_m(DriveParams{w, 2e-10}, 0.05), 2 * omega_m(DriveParams{w, 1e-10}, 0.05));
}

TEST(EscapeRates, GroundRateOracle) {
  const EscapeModel em;
  EXPECT_LT(oracle::rel(ground_escape_rate(kJ, em, 35.55e-6), oracle::Real("72797.565198805752966")), kTol);
  const oracle::Real ic("36e-6"), c("4e-12");
  EXPECT_LT(oracle::rel(ground_escape_rate(kJ, em, 35.7e-6), oracle::gamma0(ic, c, oracle::Real(35.7e-6))), kTol);
}

TEST(EscapeRates, RatioAndShift) {
  EscapeModel em;
  em.tls_shift = 0.0;
  for (double b : {35.0e-6, 35.5e-6, 35.7e-6}) {
    const auto r = escape_rates(kJ, em, b, false);
    EXPECT_DOUBLE_EQ(r.b / r.a, em.excited_ratio);
    EXPECT_EQ(r.c, r.a);
    const auto t = escape_rates(kJ, em, b, true);
    EXPECT_EQ(t.a, r.a);
    EXPECT_EQ(t.b, r.b);
    EXPECT_EQ(t.c, r.c);
  }
  em.tls_shift = 200e-9;
  const auto r = escape_rates(kJ, em, 35.5e-6, false);
  EXPECT_GT(r.c, r.a);
  EXPECT_THROW(escape_rates(kJ, em, 36e-6, false), DomainError);
}

TEST(EscapeRates, MonotoneAndFinite) {
  EscapeModel em;
  em.tls_shift = 200e-9;
  const auto g = grid(34.0e-6, 36e-6 * (1 - 1e-9), 1000);
  auto prev = escape_rates(kJ, em, g[0], false);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const auto r = escape_rates(kJ, em, g[i], false);
    EXPECT_GE(r.a, prev.a);
    EXPECT_GE(r.b, prev.b);
    EXPECT_GE(r.c, prev.c);
    EXPECT_TRUE(std::isfinite(r.c));
    prev = r;
  }
}

TEST(Monotonicity, PlasmaBarrierGroundRate) {
  const EscapeModel em;
  const double top = shallow_well_bias(kJ);
  const auto g = grid(0.0, top, 1000);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_LT(plasma_frequency(kJ, g[i]), plasma_frequency(kJ, g[i - 1]));
    EXPECT_LT(barrier_height(kJ, g[i]), barrier_height(kJ, g[i - 1]));
    EXPECT_GE(ground_escape_rate(kJ, em, g[i]), ground_escape_rate(kJ, em, g[i - 1]));
  }
}

TEST(DressedSpectrum, MinimumGapIsTwiceCoupling) {
  TlsParams tls{kTwoPi * 8.7e9, 0.0};
  tls.asymmetry = asymmetry_for_coupling(kJ, kTwoPi * 200e6, tls.level_spacing);
  const double cross = bias_for_omega_10(kJ, tls.level_spacing);
  const std::vector<double> at{cross};
  const auto p = dressed_spectrum(kJ, tls, at);
  EXPECT_NEAR(p[0].gap() / (2 * kTwoPi * 200e6), 1.0, 1e-9);

  const auto g = grid(cross - 100e-9, cross + 50e-9, 3001);
  const auto pts = dressed_spectrum(kJ, tls, g);
  std::size_t best = 0, closest = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].gap() < pts[best].gap()) best = i;
    if (std::abs(omega_10(kJ, g[i]) - tls.level_spacing) < std::abs(omega_10(kJ, g[closest]) - tls.level_spacing)) closest = i;
  }
  EXPECT_EQ(best, closest);
}

TEST(DressedSpectrum, UncoupledBranchesCross) {
  const TlsParams tls{kTwoPi * 8.7e9, 0.0};
  const double cross = bias_for_omega_10(kJ, tls.level_spacing);
  const std::vector<double> at{cross};
  EXPECT_LT(dressed_spectrum(kJ, tls, at)[0].gap(), 1e-6 * tls.level_spacing);
}

TEST(DressedSpectrum, FarDetunedPerturbative) {
  TlsParams tls{kTwoPi * 8.7e9, 0.0};
  tls.asymmetry = asymmetry_for_coupling(kJ, kTwoPi * 200e6, tls.level_spacing);
  const double oc = kTwoPi * 200e6;
  for (double b : {34.0e-6, 35.0e-6, 35.4e-6}) {
    const std::vector<double> at{b};
    const auto p = dressed_spectrum(kJ, tls, at)[0];
    const double w10 = omega_10(kJ, b);
    const double bound = oc * oc / std::abs(w10 - tls.level_spacing);
    EXPECT_LE(std::abs(p.upper - w10), bound);
    EXPECT_LE(std::abs(p.lower - tls.level_spacing), bound);
  }
}

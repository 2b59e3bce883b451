#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"
#include "qjump/rts.hpp"
#include "qjump/telegraph.hpp"

using namespace qjump;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> coded(const std::vector<Telegraph>& s, double kappa) {
  std::vector<double> x;
  for (auto t : s) x.push_back(t == Telegraph::on ? 0.5 * kappa : -0.5 * kappa);
  return x;
}

}  // namespace

TEST(PowerSpectrum, ConstantSignal) {
  const std::vector<double> x(4096, 2.5);
  const auto p = power_spectrum(x, 0.01);
  EXPECT_DOUBLE_EQ(p.dc_power, 6.25);
  for (double v : p.power) EXPECT_NEAR(v, 0.0, 1e-20);
}

TEST(PowerSpectrum, GridAndParseval) {
  const auto seq = generate_telegraph(0.236, 2.38, 0.01, 100000, 1);
  const auto p = power_spectrum(seq, 0.01, 1.0);
  EXPECT_EQ(p.frequency.front(), 0.0);
  EXPECT_NEAR(p.frequency.back(), 50.0, 1e-9);
  for (double v : p.power) EXPECT_GE(v, 0.0);
  EXPECT_NEAR(p.integral() / p.variance, 1.0, 0.01);
  EXPECT_EQ(p.segments, 8u);
}

TEST(PowerSpectrum, WhiteNoiseIsFlat) {
  UniformStream s(3, 0, UniformStream::synth);
  std::vector<double> x(1'000'000);
  for (auto& v : x) v = s.uniform() < 0.5 ? 0.5 : -0.5;
  const auto p = power_spectrum(x, 0.01);
  // Average into 64 contiguous bands; each band pools ~1000 Welch bins.
  const std::size_t bands = 64, per = (p.power.size() - 1) / bands;
  std::vector<double> avg(bands, 0.0);
  for (std::size_t b = 0; b < bands; ++b) {
    for (std::size_t k = 1 + b * per; k < 1 + (b + 1) * per; ++k) avg[b] += p.power[k];
    avg[b] /= per;
  }
  const auto [lo, hi] = std::minmax_element(avg.begin(), avg.end());
  EXPECT_LT(*hi / *lo, 3.0);
  // flat level is 2 var T for a one-sided density
  EXPECT_NEAR(avg[bands / 2], 2 * 0.25 * 0.01, 0.05 * 2 * 0.25 * 0.01);
}

TEST(PowerSpectrum, Errors) {
  EXPECT_THROW(power_spectrum(std::vector<double>(1000, 0.0), 0.01), InsufficientDataError);
  EXPECT_THROW(power_spectrum(std::vector<double>(2048, 0.0), 0.0), DomainError);
}

TEST(TelegraphPsd, OneSidedFormula) {
  const double r_on = 0.236, r_off = 2.38, r = r_on + r_off, kappa = 1.7;
  // integral over f in [0, inf) of the one-sided density equals the variance
  // kappa^2 R_on R_off / R^2
  double integral = 0.0;
  const double df = 1e-4;
  for (double f = 0.5 * df; f < 2000.0; f += df) integral += telegraph_psd(f, kappa, r_on, r_off) * df;
  EXPECT_NEAR(integral / (kappa * kappa * r_on * r_off / (r * r)), 1.0, 1e-3);
  EXPECT_NEAR(telegraph_psd(r / (2 * kPi), kappa, r_on, r_off) / telegraph_psd(0.0, kappa, r_on, r_off), 0.5, 1e-12);
}

TEST(FitLorentzian, ExactSamples) {
  const double T = 0.01, A = 3.0, R = 2.616, floor = 1e-5;
  Psd p;
  p.sample_interval = T;
  for (int k = 0; k <= 2000; ++k) {
    const double f = 50.0 * k / 2000;
    const double w = 2.0 / T * std::sin(kPi * f * T);
    p.frequency.push_back(f);
    p.power.push_back(A / (R * R + w * w) + floor);
  }
  const auto fit = fit_lorentzian(p);
  EXPECT_NEAR(fit.amplitude / A, 1.0, 1e-6);
  EXPECT_NEAR(fit.width / R, 1.0, 1e-6);
  EXPECT_NEAR(fit.floor / floor, 1.0, 1e-6);
  EXPECT_LT(fit.residual, 1e-8);
  EXPECT_NEAR(fit.half_width_hz(), R / (2 * kPi), 1e-6);
}

TEST(FitLorentzian, SyntheticTelegraph) {
  const double r_on = 0.236, r_off = 2.38;
  const auto seq = generate_telegraph(r_on, r_off, 0.01, 100000, 2);
  const auto fit = fit_lorentzian(power_spectrum(seq, 0.01));
  EXPECT_NEAR(fit.half_width_hz() / ((r_on + r_off) / (2 * kPi)), 1.0, 0.1);
}

TEST(FitLorentzian, KappaSquared) {
  const double r_on = 0.236, r_off = 2.38, kappa = 80e-9;
  const auto seq = generate_telegraph(r_on, r_off, 0.01, 1'000'000, 4);
  const auto fit = fit_lorentzian(power_spectrum(seq, 0.01, kappa));
  EXPECT_NEAR(fit.kappa_squared(r_on, r_off) / (kappa * kappa), 1.0, 0.15);
}

TEST(Autocorrelation, DecaysAtSummedRate) {
  // Independent of the FFT path: direct lagged products.
  const double r_on = 0.236, r_off = 2.38, T = 0.01;
  const auto x = coded(generate_telegraph(r_on, r_off, T, 1'000'000, 5), 1.0);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  std::vector<double> lag, logc;
  for (int L = 0; L <= 60; L += 4) {
    double c = 0.0;
    for (std::size_t i = 0; i + L < x.size(); ++i) c += (x[i] - mean) * (x[i + L] - mean);
    c /= (x.size() - L);
    lag.push_back(L * T);
    logc.push_back(std::log(c));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = lag.size();
  for (std::size_t i = 0; i < lag.size(); ++i) {
    sx += lag[i];
    sy += logc[i];
    sxx += lag[i] * lag[i];
    sxy += lag[i] * logc[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(-slope / (r_on + r_off), 1.0, 0.05);
}

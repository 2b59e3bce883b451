#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <vector>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"
#include "qjump/rts.hpp"

using namespace qjump;

namespace {

// Isolated one-sample "off" blips at a constant per-sample probability: the
// off->on counts per window are binomial, which is Poisson to O(p).
std::vector<Telegraph> blips(double p, std::size_t n, std::uint64_t seed) {
  UniformStream s(seed, 0, UniformStream::synth);
  std::vector<Telegraph> out(n, Telegraph::on);
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (out[i - 1] == Telegraph::on && s.uniform() < p) out[i] = Telegraph::off;
  return out;
}

}  // namespace

TEST(PoissonTest, ZeroJumpsBoundary) {
  const std::vector<Telegraph> on(600 * 60, Telegraph::on);
  const auto f = poisson_test(on, 0.01);
  EXPECT_EQ(f.mean, 0.0);
  EXPECT_FALSE(f.tested);
  EXPECT_EQ(f.windows, 60u);
  ASSERT_EQ(f.histogram.size(), 1u);
  EXPECT_EQ(f.histogram[0], 60u);
}

TEST(PoissonTest, HistogramMassAndMoments) {
  const auto seq = blips(0.002, 600 * 500, 1);
  const auto f = poisson_test(seq, 0.01);
  std::size_t mass = 0;
  for (auto h : f.histogram) mass += h;
  EXPECT_EQ(mass, f.windows);
  // direct moments
  std::vector<double> counts(f.windows, 0.0);
  for (std::size_t i = 1; i < f.windows * 600; ++i)
    if (seq[i - 1] == Telegraph::off && seq[i] == Telegraph::on) counts[i / 600] += 1;
  double m = 0, v = 0;
  for (double c : counts) m += c;
  m /= counts.size();
  for (double c : counts) v += (c - m) * (c - m);
  v /= counts.size() - 1;
  EXPECT_DOUBLE_EQ(f.mean, m);
  EXPECT_NEAR(f.variance, v, 1e-12);
  EXPECT_TRUE(f.tested);
  EXPECT_GE(f.dof, 1);
  const boost::math::chi_squared chi(f.dof);
  EXPECT_NEAR(f.p_value, boost::math::cdf(boost::math::complement(chi, f.chi_square)), 1e-12);
}

TEST(PoissonTest, PoissonSourcePasses) {
  int pass = 0, dispersed = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto f = poisson_test(blips(0.0015, 600 * 1000, seed), 0.01);
    if (f.p_value > 0.01) ++pass;
    if (std::abs(f.dispersion_z) < 3.0) ++dispersed;
  }
  EXPECT_GE(pass, 95);
  EXPECT_GE(dispersed, 97);
}

TEST(PoissonTest, Errors) {
  EXPECT_THROW(poisson_test(std::vector<Telegraph>(600 * 49, Telegraph::on), 0.01), InsufficientDataError);
  EXPECT_THROW(poisson_test(std::vector<Telegraph>(10, Telegraph::on), 0.01, 0.0), DomainError);
  EXPECT_THROW(poisson_test(std::vector<Telegraph>(10, Telegraph::on), 0.01, 0.001), DomainError);
}

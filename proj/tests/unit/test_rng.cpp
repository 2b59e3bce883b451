#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <vector>

#include "qjump/rng.hpp"

using namespace qjump;

TEST(Mix64, MatchesSplitMix64Reference) {
  // Published SplitMix64 outputs for seed 1234567.
  constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state = 1234567;
  const std::uint64_t want[] = {6457827717110365317ULL, 3203168211198807973ULL,
                                9817491932198370423ULL, 4593380528125082431ULL,
                                16408922859458223821ULL};
  for (std::uint64_t w : want) {
    state += golden;
    EXPECT_EQ(mix64(state), w);
  }
}

TEST(UniformStream, Reproducible) {
  auto a = rng_stream(42, 7);
  auto b = rng_stream(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  EXPECT_EQ(a.counter(), 1000u);
}

TEST(UniformStream, DistinctKeys) {
  auto a = rng_stream(42, 0);
  auto b = rng_stream(42, 1);
  auto c = rng_stream(43, 0);
  auto d = UniformStream(42, 0, UniformStream::tls);
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  EXPECT_NE(x, d.next_u64());
}

TEST(UniformStream, UniformityChiSquare) {
  auto s = rng_stream(2024, 3);
  constexpr int bins = 1000;
  constexpr int n = 1'000'000;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++counts[static_cast<int>(u * bins)];
  }
  const double expected = static_cast<double>(n) / bins;
  double chi = 0.0;
  for (int c : counts) chi += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(bins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi)), 0.01);
}

TEST(UniformStream, NeighbouringStreamsUncorrelated) {
  auto a = rng_stream(5, 0);
  auto b = rng_stream(5, 1);
  constexpr int n = 100'000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform(), y = b.uniform();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - sx / n * sy / n;
  const double rho = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  EXPECT_LT(std::abs(rho), 0.01);
}

TEST(UniformStream, NormalAndExponentialMoments) {
  auto s = rng_stream(9, 0);
  constexpr int n = 200'000;
  double m = 0, v = 0, e = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m += z;
    v += z * z;
    e += s.exponential();
  }
  EXPECT_NEAR(m / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(v / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(e / n, 1.0, 5.0 / std::sqrt(n));
}

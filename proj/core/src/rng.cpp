#include "qjump/rng.hpp"

#include <cmath>
#include <numbers>

namespace qjump {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t index, std::uint64_t domain)
    : key_(mix64(seed ^ mix64(index * kGolden + domain))) {}

std::uint64_t UniformStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double UniformStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double UniformStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double UniformStream::exponential() { return -std::log1p(-uniform()); }

}  // namespace qjump

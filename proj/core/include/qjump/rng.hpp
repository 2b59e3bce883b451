#pragma once

#include <cstdint>
#include <limits>

namespace qjump {

// Counter-based stream: output k of stream (seed, index, domain) is
// mix64(key + (k + 1) * golden), key = mix64(seed ^ mix64(index * golden + domain)).
// mix64 is the SplitMix64 finalizer, so every value is a pure function of
// (seed, index, domain, k) and portable across platforms.
class UniformStream {
 public:
  using result_type = std::uint64_t;

  enum Domain : std::uint64_t {
    sweep = 0x5bd1e9955bd1e995ULL,
    tls = 0x94d049bb133111ebULL,
    synth = 0xbf58476d1ce4e5b9ULL,
  };

  UniformStream(std::uint64_t seed, std::uint64_t index, std::uint64_t domain = sweep);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal by Box-Muller (two uniforms per call, no caching).
  double normal();
  // Exponential with unit mean.
  double exponential();

  std::uint64_t counter() const { return counter_; }

  // URBG interface.
  std::uint64_t operator()() { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

// Stream for a given sweep (or sample block) of a run.
inline UniformStream rng_stream(std::uint64_t master_seed, std::uint64_t index) {
  return UniformStream(master_seed, index, UniformStream::sweep);
}

}  // namespace qjump

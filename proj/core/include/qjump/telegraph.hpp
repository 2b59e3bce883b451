#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qjump/rts.hpp"

namespace qjump {

// Continuous-time two-state Markov process sampled every `period`.
// r_on is the rate of leaving "on", r_off the rate of leaving "off"; the
// initial state is drawn from the stationary distribution.
std::vector<Telegraph> generate_telegraph(double r_on, double r_off, double period,
                                          std::size_t samples, std::uint64_t seed);

struct BandCurrents {
  double upper = 35.63e-6;
  double middle = 35.55e-6;
  double lower = 35.50e-6;
  double noise = 5e-9;             // gaussian sigma, A
  double middle_fraction = 0.3;    // share of "on" sweeps escaping from |1g>
};

// Maps a telegraph onto switching currents: on -> upper or middle, off -> lower.
Trajectory synthesize_trajectory(std::span<const Telegraph> seq, double period, std::uint64_t seed,
                                 const BandCurrents& bands = {});

}  // namespace qjump

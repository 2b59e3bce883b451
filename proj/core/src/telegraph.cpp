#include "qjump/telegraph.hpp"

#include <cmath>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

std::vector<Telegraph> generate_telegraph(double r_on, double r_off, double period,
                                          std::size_t samples, std::uint64_t seed) {
  if (!(r_on > 0.0) || !(r_off > 0.0) || !std::isfinite(r_on) || !std::isfinite(r_off)) {
    throw DomainError("telegraph rates must be positive and finite");
  }
  if (!(period > 0.0)) throw DomainError("sample period must be positive");

  UniformStream rng(seed, 0, UniformStream::synth);
  Telegraph state = rng.uniform() < r_off / (r_on + r_off) ? Telegraph::on : Telegraph::off;
  auto leave_rate = [&](Telegraph s) { return s == Telegraph::on ? r_on : r_off; };
  double next_switch = rng.exponential() / leave_rate(state);

  std::vector<Telegraph> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) * period;
    while (next_switch <= t) {
      state = state == Telegraph::on ? Telegraph::off : Telegraph::on;
      next_switch += rng.exponential() / leave_rate(state);
    }
    out.push_back(state);
  }
  return out;
}

Trajectory synthesize_trajectory(std::span<const Telegraph> seq, double period, std::uint64_t seed,
                                 const BandCurrents& bands) {
  UniformStream rng(seed, 1, UniformStream::synth);
  Trajectory traj;
  traj.period = period;
  traj.seed = seed;
  traj.mode = "synthetic";
  traj.events.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    SwitchingEvent e;
    e.sweep_index = i;
    e.time = static_cast<double>(i) * period;
    const double u = rng.uniform();
    if (seq[i] == Telegraph::off) {
      e.level = Level::c;
      e.switching_current = bands.lower;
    } else if (u < bands.middle_fraction) {
      e.level = Level::b;
      e.switching_current = bands.middle;
    } else {
      e.level = Level::a;
      e.switching_current = bands.upper;
    }
    e.switching_current += bands.noise * rng.normal();
    traj.events.push_back(e);
  }
  return traj;
}

}  // namespace qjump

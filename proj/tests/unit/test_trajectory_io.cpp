#include <gtest/gtest.h>

#include <sstream>

#include "qjump/errors.hpp"
#include "qjump/trajectory_io.hpp"

using namespace qjump;

namespace {

Trajectory sample() {
  Trajectory t;
  t.period = 0.01;
  t.seed = 18446744073709551615ULL;
  t.digest = "0123456789abcdef";
  t.mode = "full";
  t.provenance = "command: simulate sweeps=3";
  for (std::size_t k = 0; k < 3; ++k) {
    SwitchingEvent e;
    e.sweep_index = k;
    e.time = k * 0.01 + 7.1234567890123e-6;
    e.switching_current = 35.6e-6 + k * 1.0000000000000001e-9;
    e.level = static_cast<Level>(k);
    e.ramp_exhausted = k == 2;
    t.events.push_back(e);
  }
  return t;
}

int line_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_trajectory(in);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

const char* kHead = "# qjump trajectory\n# digest=none seed=1 period_s=0.01 mode=full\nsweep_index,time_s,I_sw_A,escape_level\n";

}  // namespace

TEST(TrajectoryIo, RoundTrip) {
  const auto t = sample();
  std::ostringstream out;
  write_trajectory(out, t);
  std::istringstream in(out.str());
  const auto back = read_trajectory(in);
  EXPECT_EQ(back.seed, t.seed);
  EXPECT_EQ(back.digest, t.digest);
  EXPECT_EQ(back.period, t.period);
  EXPECT_EQ(back.mode, t.mode);
  EXPECT_EQ(back.provenance, t.provenance);
  ASSERT_EQ(back.events.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back.events[k].sweep_index, k);
    EXPECT_EQ(back.events[k].time, t.events[k].time);
    EXPECT_EQ(back.events[k].switching_current, t.events[k].switching_current);
    EXPECT_EQ(back.events[k].level, t.events[k].level);
    EXPECT_EQ(back.events[k].ramp_exhausted, t.events[k].ramp_exhausted);
  }
  std::ostringstream again;
  write_trajectory(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(TrajectoryIo, Format) {
  std::ostringstream out;
  write_trajectory(out, sample());
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("# qjump trajectory\n# digest=0123456789abcdef seed=18446744073709551615 period_s=0.01 mode=full\n", 0), 0u);
  EXPECT_NE(s.find("\nsweep_index,time_s,I_sw_A,escape_level\n"), std::string::npos);
  EXPECT_NE(s.find(",c*\n"), std::string::npos);
}

TEST(TrajectoryIo, MalformedLines) {
  const std::string h = kHead;
  EXPECT_EQ(line_of(h + "0,0.001,3.56e-05,a\n1,0.011,oops,a\n"), 5);
  EXPECT_EQ(line_of(h + "0,0.001,3.56e-05\n"), 4);
  EXPECT_EQ(line_of(h + "0,0.001,3.56e-05,q\n"), 4);
  EXPECT_EQ(line_of(h + "1,0.001,3.56e-05,a\n1,0.011,3.56e-05,a\n"), 5);
  EXPECT_EQ(line_of("# qjump trajectory\n# digest=none seed=1 period_s=0.01 mode=full\nwrong,header\n"), 3);
  EXPECT_EQ(line_of("# qjump trajectory\n# digest=none seed=-1 period_s=0.01 mode=full\n"), 2);
  EXPECT_EQ(line_of("# qjump trajectory\nsweep_index,time_s,I_sw_A,escape_level\n0,0,1,a\n"), 3);
  EXPECT_THROW(load_trajectory("/nonexistent/traj.csv"), DataError);
}

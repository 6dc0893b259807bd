#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tippe/phases.hpp"

namespace {

using tippe::IntegrationConfig;
using tippe::Params;
using tippe::State;

tippe::PhaseReport phases_for(const State& s0, double t1 = 10.0)
{
  const Params p = tippe::reference_params();
  IntegrationConfig c;
  c.t1 = t1;
  const auto run = tippe::integrate(s0, p, c);
  EXPECT_TRUE(run.ok()) << run.reason;
  return tippe::detect_phases(run.trajectory, run.events, p);
}

tippe::Event crossing(double t, double theta, int direction)
{
  tippe::Event e;
  e.kind = tippe::EventKind::phi_dot_zero_crossing;
  e.t = t;
  e.state.theta = theta;
  e.direction = direction;
  return e;
}

/// Hand-made trajectory: theta ramps from 0.1 to 3.0 over [1, 3] s, phi_dot
/// swings with amplitude `amp`.
tippe::Trajectory synthetic(double amp)
{
  tippe::Trajectory tr;
  tr.t_begin = 0.0;
  tr.t_end = 4.0;
  tr.dt_out = 0.01;
  for (int k = 0; k <= 400; ++k)
  {
    const double t = 0.01 * k;
    const double ramp = std::clamp(t - 1.0, 0.0, 2.0) / 2.0;
    State s;
    s.theta = 0.1 + 2.9 * ramp;
    s.phi_dot = amp * std::sin(10.0 * t);
    tr.samples.push_back({t, s});
  }
  return tr;
}

TEST(Phases, EmptyTrajectory)
{
  const auto rep = tippe::detect_phases({}, {}, tippe::reference_params());
  EXPECT_FALSE(rep.t_init);
  EXPECT_FALSE(rep.t_end);
  EXPECT_FALSE(rep.inverted);
}

TEST(Phases, SyntheticGatesPickLastInitiationAndFirstEnding)
{
  const tippe::Trajectory tr = synthetic(100.0);
  const std::vector<tippe::Event> events{
      crossing(0.3, 0.1, +1), crossing(0.6, 0.1, -1), crossing(0.9, 0.1, +1),
      crossing(2.0, 1.5, +1), crossing(3.2, 3.0, -1), crossing(3.5, 3.0, +1)};
  const auto rep = tippe::detect_phases(tr, events, tippe::reference_params());
  ASSERT_TRUE(rep.t_init && rep.t_end && rep.T_inv);
  EXPECT_DOUBLE_EQ(*rep.t_init, 0.9);
  EXPECT_DOUBLE_EQ(*rep.t_end, 3.2);
  EXPECT_DOUBLE_EQ(*rep.T_inv, 2.3);
  EXPECT_TRUE(rep.sync_phase_present);
  EXPECT_TRUE(rep.inverted);
  EXPECT_TRUE(rep.smooth);
}

TEST(Phases, QuietSwingsAreIgnored)
{
  const tippe::Trajectory tr = synthetic(10.0);
  const std::vector<tippe::Event> events{crossing(0.9, 0.1, +1), crossing(3.2, 3.0, -1)};
  const auto rep = tippe::detect_phases(tr, events, tippe::reference_params());
  EXPECT_FALSE(rep.t_init);
  EXPECT_FALSE(rep.t_end);
}

TEST(Phases, ClimbWithoutInitiationStartsAtRunStart)
{
  const tippe::Trajectory tr = synthetic(100.0);
  const std::vector<tippe::Event> events{crossing(3.2, 3.0, +1)};
  const auto rep = tippe::detect_phases(tr, events, tippe::reference_params());
  ASSERT_TRUE(rep.t_init);
  EXPECT_EQ(*rep.t_init, 0.0);
  EXPECT_FALSE(rep.sync_phase_present);
}

TEST(Phases, ReferenceRun)
{
  const auto rep = phases_for({0.1, 0.0, 0.0, 155.0, 0.0, 0.0});
  ASSERT_TRUE(rep.t_init && rep.t_end);
  EXPECT_NEAR(*rep.t_init, 3.2, 0.3);
  EXPECT_NEAR(*rep.t_end, 7.87, 0.8);
  EXPECT_TRUE(rep.sync_phase_present);
  EXPECT_TRUE(rep.inverted);
  EXPECT_FALSE(rep.smooth);
  EXPECT_GT(rep.min_gn, 0.0);
  EXPECT_GT(rep.final_theta, std::numbers::pi - 0.3);
}

TEST(Phases, FastPrecessionClimbsSmoothly)
{
  const auto rep = phases_for({0.01, 0.0, 195.0, 155.0, 0.0, 0.0});
  ASSERT_TRUE(rep.t_end);
  EXPECT_TRUE(rep.smooth);
  EXPECT_FALSE(rep.sync_phase_present);
  EXPECT_NEAR(*rep.t_end, 7.77, 0.8);
}

TEST(Phases, SlowSpinDoesNotInvert)
{
  const auto rep = phases_for({0.1, 0.0, 0.0, 20.0, 0.0, 0.0}, 5.0);
  EXPECT_FALSE(rep.inverted);
  EXPECT_FALSE(rep.t_end);
  EXPECT_FALSE(rep.smooth);
}

}  // namespace

#include "tippe/phases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tippe/dynamics.hpp"

namespace tippe {

namespace {

double max_abs_phi_dot(const std::vector<Sample>& samples, double lo, double hi)
{
  auto it = std::lower_bound(samples.begin(), samples.end(), lo,
                             [](const Sample& s, double v) { return s.t < v; });
  double amp = 0.0;
  for (; it != samples.end() && it->t <= hi; ++it)
  {
    amp = std::max(amp, std::abs(it->state.phi_dot));
  }
  return amp;
}

std::optional<double> first_time_above(const std::vector<Sample>& samples, double theta)
{
  for (const Sample& s : samples)
  {
    if (s.state.theta > theta)
    {
      return s.t;
    }
  }
  return std::nullopt;
}

}  // namespace

PhaseReport detect_phases(const Trajectory& traj, const std::vector<Event>& events,
                          const Params& p, const PhaseGates& gates)
{
  PhaseReport rep;
  if (traj.samples.empty())
  {
    return rep;
  }
  const double pi = std::numbers::pi;

  rep.min_gn = std::numeric_limits<double>::infinity();
  for (const Sample& s : traj.samples)
  {
    rep.min_gn = std::min(rep.min_gn, normal_force(s.state, p).gn);
  }
  const State& last = traj.samples.back().state;
  rep.final_theta = last.theta;
  rep.final_theta_dot = last.theta_dot;
  rep.inverted = last.theta > pi - gates.final_theta_margin &&
                 std::abs(last.theta_dot) < gates.final_theta_dot_max;

  auto loud = [&](const Event& e) {
    return max_abs_phi_dot(traj.samples, e.t - gates.window, e.t + gates.window) >
           gates.amplitude_min;
  };

  for (const Event& e : events)
  {
    if (e.kind == EventKind::phi_dot_zero_crossing && e.state.theta > pi - gates.theta_high &&
        loud(e))
    {
      rep.t_end = e.t;
      break;
    }
  }
  for (const Event& e : events)
  {
    if (rep.t_end && e.t >= *rep.t_end)
    {
      break;
    }
    if (e.kind == EventKind::phi_dot_zero_crossing && e.direction > 0 &&
        e.state.theta < gates.theta_low && loud(e))
    {
      rep.t_init = e.t;
    }
  }
  if (rep.t_end && !rep.t_init)
  {
    rep.t_init = traj.t_begin;
  }
  if (rep.t_init && rep.t_end)
  {
    rep.T_inv = *rep.t_end - *rep.t_init;
  }
  rep.sync_phase_present = rep.t_init && *rep.t_init - traj.t_begin > gates.sync_min;

  const auto climb_start = first_time_above(traj.samples, gates.smooth_theta);
  if (climb_start)
  {
    const double climb_stop =
        first_time_above(traj.samples, pi - gates.theta_high).value_or(traj.t_end);
    for (const Event& e : events)
    {
      if ((e.kind == EventKind::theta_local_min || e.kind == EventKind::theta_local_max) &&
          e.t > *climb_start && e.t < climb_stop)
      {
        ++rep.climb_theta_dot_changes;
      }
    }
  }
  rep.smooth = rep.inverted && climb_start.has_value() &&
               rep.climb_theta_dot_changes <= gates.smooth_max_changes;
  return rep;
}

}  // namespace tippe

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tippe/dopri5.hpp"
#include "tippe/dynamics.hpp"
#include "tippe/model.hpp"

namespace tippe {

enum class GnPolicy
{
  halt,  ///< stop at the first time gn reaches zero
  warn,  ///< record the event and keep integrating
};

struct IntegrationConfig
{
  double t0{0.0};
  double t1{10.0};
  double rel_tol{1e-9};
  double abs_tol{1e-12};
  double dt_out{1e-3};
  double max_step{1e-2};
  GnPolicy gn_policy{GnPolicy::halt};

  /// t1 >= t0 (t1 == t0 gives an empty trajectory), positive tolerances,
  /// dt_out and max_step. Throws std::invalid_argument.
  void validate() const;
};

struct Sample
{
  double t{};
  State state;
};

using Segment = DenseStep<6>;

/// Samples on the output grid t0 + k dt_out and the accepted integrator
/// steps, whose dense-output polynomials cover [t_begin, t_end] without gaps.
struct Trajectory
{
  std::vector<Sample> samples;
  std::vector<Segment> segments;
  double t_begin{};
  double t_end{};
  double dt_out{};

  bool empty() const { return samples.empty(); }
};

enum class EventKind
{
  phi_dot_zero_crossing,
  theta_local_min,
  theta_local_max,
  gn_nonpositive,
};

std::string_view to_string(EventKind kind);

struct Event
{
  EventKind kind{};
  double t{};
  State state;
  int direction{};   ///< +1 rising through zero, -1 falling
  double t_lo{};     ///< refined bracket; the event function changes sign
  double t_hi{};     ///< between t_lo and t_hi
};

enum class RunStatus
{
  completed,
  gn_nonpositive,   ///< normal force reached zero under GnPolicy::halt
  pole_approach,    ///< |sin(theta)| < 1e-8 on an accepted step
  step_underflow,   ///< step size fell below 1e-14 s
  model_breakdown,  ///< normal-force closure failed
};

std::string_view to_string(RunStatus status);

struct IntegrationResult
{
  Trajectory trajectory;
  std::vector<Event> events;
  RunStatus status{RunStatus::completed};
  std::string reason;

  bool ok() const { return status == RunStatus::completed; }
};

/// Integrate the Euler-angle equations from s0 over [cfg.t0, cfg.t1].
///
/// Halts with a partial trajectory on gn <= 0 (GnPolicy::halt), on pole
/// approach and on step-size underflow. Events are located on the dense
/// output and refined by bisection to 1e-9 s.
///
/// Throws std::invalid_argument if s0 is not finite or theta is outside
/// (0, pi), or if cfg is invalid.
IntegrationResult integrate(const State& s0, const Params& p,
                            const IntegrationConfig& cfg);

/// Interpolated state at t. Returns stored grid samples bit-exactly.
/// Throws std::out_of_range outside [t_begin, t_end].
State dense_eval(const Trajectory& traj, double t);

/// Uniformly spaced dense samples on [t_begin, t_end] with spacing dt.
std::vector<Sample> resample(const Trajectory& traj, double dt);

/// Precession angle phi(t) - phi(t_begin), the integral of phi_dot over the
/// dense output. Each step's polynomial is integrated exactly.
class PrecessionAngle
{
public:
  explicit PrecessionAngle(const Trajectory& traj);

  /// Throws std::out_of_range outside [t_begin, t_end].
  double operator()(double t) const;

private:
  const Trajectory* traj_;
  std::vector<double> at_step_start_;
};

}  // namespace tippe

#pragma once

#include <optional>
#include <vector>

#include "tippe/integrator.hpp"

namespace tippe {

/// Gates that turn the verbal phase definitions into executable ones.
struct PhaseGates
{
  double theta_low{0.5};        ///< initiation crossings need theta < theta_low
  double theta_high{0.5};       ///< ending crossings need theta > pi - theta_high
  double amplitude_min{50.0};   ///< max |phi_dot| in the window must exceed this
  double window{0.2};           ///< half-width of the amplitude window [s]
  double sync_min{0.2};         ///< t_init - t0 above this means a synchronisation phase
  double final_theta_margin{0.3};
  double final_theta_dot_max{0.5};
  double smooth_theta{0.8};     ///< theta_dot sign changes are counted above this
  int smooth_max_changes{2};
};

struct PhaseReport
{
  std::optional<double> t_init;
  std::optional<double> t_end;
  std::optional<double> T_inv;
  bool sync_phase_present{};
  bool inverted{};
  double min_gn{};
  double final_theta{};
  double final_theta_dot{};
  /// theta_dot sign changes between the first passage of smooth_theta and the
  /// first passage of pi - theta_high (or the end of the run).
  int climb_theta_dot_changes{};
  bool smooth{};
};

/**
 * Locate the initiation and ending times of the climb.
 *
 * t_end is the first phi_dot sign change (either direction) with
 * theta > pi - theta_high and a large phi_dot swing in the surrounding window.
 * t_init is the last negative-to-positive phi_dot crossing before t_end with
 * theta < theta_low and the same amplitude gate; when the climb starts without
 * such a crossing t_init is the start of the run.
 */
PhaseReport detect_phases(const Trajectory& traj, const std::vector<Event>& events,
                          const Params& p, const PhaseGates& gates = {});

}  // namespace tippe

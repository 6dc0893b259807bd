#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tippe/analysis.hpp"
#include "tippe/integrator.hpp"
#include "tippe/phases.hpp"
#include "tippe/potential.hpp"
#include "tippe/sweep.hpp"

namespace tippe {

inline constexpr std::string_view kTrajectoryHeader =
    "t,theta,theta_dot,phi_dot,psi_dot,omega3,nu_x,nu_y,g_n,lambda,D,E,E_trans,E_rot,"
    "E_pot,Etilde,E_dot,tau_x,tau_y,tau_z,xi";

inline constexpr std::string_view kDiagnosticsHeader =
    "t,g_n,lambda,D,Etilde,E,E_trans,E_rot,E_pot,E_dot,tau_x,tau_y,tau_z,met_residual,"
    "met_residual_lambda0,phi_dot_identity_residual,phi_dot_identity_printed_residual,"
    "Etilde_minus_E,Etilde_minus_E_estimate,xi";

inline constexpr std::string_view kEventsHeader =
    "kind,t,t_lo,t_hi,direction,theta,theta_dot,phi_dot,omega3,nu_x,nu_y";

inline constexpr std::string_view kSweepHeader =
    "index,axis,value,theta0,theta_dot0,phi_dot0,omega30,nu_x0,nu_y0,lambda,lambda_ratio,"
    "status,t_init,t_end,T_inv,sync_phase_present,inverted,smooth,gn_positive_throughout,"
    "min_gn,climb_theta_dot_changes,max_abs_nu_x,max_abs_nu_y,max_abs_theta_dot";

inline constexpr std::string_view kPotentialHeader = "D,z,V";
inline constexpr std::string_view kMinimaHeader = "D,z_min,V_min,at_boundary";

/// Locale-independent rendering with 17 significant digits.
std::string format_double(double v);

/// Rows of `samples` and `diagnostics` must correspond one to one.
void write_trajectory_csv(std::ostream& os, const std::vector<Sample>& samples,
                          const std::vector<DiagnosticRow>& diagnostics);
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticRow>& diagnostics);
void write_events_csv(std::ostream& os, const std::vector<Event>& events);
void write_sweep_csv(std::ostream& os, SweepAxis axis, const std::vector<SweepRow>& rows);

struct PotentialCurve
{
  double D{};
  std::vector<double> z;
  std::vector<double> V;
  PotentialMinimum minimum;
};

void write_potential_csv(std::ostream& os, const std::vector<PotentialCurve>& curves);
void write_minima_csv(std::ostream& os, const std::vector<PotentialCurve>& curves);

}  // namespace tippe

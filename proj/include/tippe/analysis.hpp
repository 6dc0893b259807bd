#pragma once

#include <cmath>
#include <vector>

#include "tippe/integrator.hpp"
#include "tippe/model.hpp"

namespace tippe {

// ---------------------------------------------------------------------------
// Integrals of the rolling sphere and energy bookkeeping.
//
// These are templates so that the same expressions can be evaluated on
// automatic-differentiation scalars; `using std::sin` etc. keeps ADL open.
// ---------------------------------------------------------------------------

/// d(z) = gamma + sigma (alpha - z)^2 + sigma gamma (1 - z^2)
template <typename T>
T d_of_z(const T& z, const Params& p)
{
  const T am = p.alpha() - z;
  return p.gamma() + p.sigma() * am * am + p.sigma() * p.gamma() * (1.0 - z * z);
}

/// Jellett's integral lambda = -L.a = R I1 phi_dot sin^2(theta) - R I3 omega3 (alpha - cos(theta)).
template <typename T>
T jellett(const BasicState<T>& s, const Params& p)
{
  using std::cos;
  using std::sin;
  const T st = sin(s.theta);
  return p.R() * p.I1() * s.phi_dot * st * st -
         p.R() * p.I3() * s.omega3 * (p.alpha() - cos(s.theta));
}

/// Routh function D = I3 omega3 sqrt(d(cos(theta))).
template <typename T>
T routh(const BasicState<T>& s, const Params& p)
{
  using std::cos;
  using std::sqrt;
  return p.I3() * s.omega3 * sqrt(d_of_z(T(cos(s.theta)), p));
}

/// Energy with the rolling constraint substituted (vA = 0).
template <typename T>
T modified_energy(const BasicState<T>& s, const Params& p)
{
  using std::cos;
  using std::sin;
  const T st = sin(s.theta);
  const T ct = cos(s.theta);
  const T am = p.alpha() - ct;
  const T th2 = s.theta_dot * s.theta_dot;
  const T ph2s2 = s.phi_dot * s.phi_dot * st * st;
  const double mR2 = p.m() * p.R() * p.R();
  return 0.5 * (p.I1() * ph2s2 + p.I1() * th2 + p.I3() * s.omega3 * s.omega3) +
         p.m() * p.g() * p.R() * (1.0 - p.alpha() * ct) +
         0.5 * mR2 *
             (am * am * (th2 + ph2s2) +
              st * st * (th2 + s.omega3 * s.omega3 + 2.0 * s.omega3 * s.phi_dot * am));
}

template <typename T>
struct BasicEnergySplit
{
  T E{};
  T E_trans{};
  T E_rot{};
  T E_pot{};
};

using EnergySplit = BasicEnergySplit<double>;

/// Translational, rotational and potential energy; the centre-of-mass velocity
/// is vA - omega x a written out in the rotating frame.
template <typename T>
BasicEnergySplit<T> energy_split(const BasicState<T>& s, const Params& p)
{
  using std::cos;
  using std::sin;
  const T st = sin(s.theta);
  const T ct = cos(s.theta);
  const double R = p.R();
  const T am = p.alpha() - ct;
  const T vx = s.nu_x * ct - R * s.theta_dot * am;
  const T vy = s.nu_y - R * st * (s.omega3 + s.phi_dot * am);
  const T vz = s.nu_x * st + R * s.theta_dot * st;

  BasicEnergySplit<T> e;
  e.E_trans = 0.5 * p.m() * (vx * vx + vy * vy + vz * vz);
  e.E_rot = 0.5 * (p.I1() * (s.theta_dot * s.theta_dot + s.phi_dot * s.phi_dot * st * st) +
                   p.I3() * s.omega3 * s.omega3);
  e.E_pot = p.m() * p.g() * R * (1.0 - p.alpha() * ct);
  e.E = e.E_trans + e.E_rot + e.E_pot;
  return e;
}

/// Frictional power -mu gn |vA|^2 [W].
double energy_rate(const State& s, const Params& p);

/// Torque about the centre of mass, a x (gn z - mu gn vA), in the rotating
/// (x, y, z) frame.
struct Torque
{
  double x{};
  double y{};
  double z{};
};

Torque torque(const State& s, const Params& p);

/// Gyroscopic balance quantity xi = I3 omega3 - I1 phi_dot cos(theta).
double gyroscopic_balance(const State& s, const Params& p);

/// phi_dot sin^2(theta) against the Jellett-derived right-hand side.
struct PhiDotIdentity
{
  /// phi_dot sin^2 - [lambda/(R I1) + (I3/I1) omega3 (alpha - cos)], identically zero.
  double exact{};
  /// phi_dot sin^2 - [lambda/(R I3) + omega3 (alpha - cos)], zero only for I1 == I3.
  double printed{};
};

PhiDotIdentity phi_dot_identity(const State& s, const Params& p, double lambda);

/// Modified minus total energy: -m vA^2 / 2 + m vA.(omega x a), and the
/// approximation -m nu_x^2 / 2 + m nu_y (2 |omega x a| - nu_y) / 2.
struct EnergyGap
{
  double exact{};
  double estimate{};
};

EnergyGap etilde_minus_e(const State& s, const Params& p);

/// omega x a in the rotating frame.
Eigen::Vector3d omega_cross_a(const State& s, const Params& p);

// ---------------------------------------------------------------------------
// Per-sample diagnostics
// ---------------------------------------------------------------------------

struct DiagnosticRow
{
  double t{};
  double gn{};
  double lambda{};
  double D{};
  double Etilde{};
  double E{};
  double E_trans{};
  double E_rot{};
  double E_pot{};
  double E_dot{};
  double tau_x{};
  double tau_y{};
  double tau_z{};
  double met_residual{};            ///< MET with the sample's own lambda
  double met_residual_lambda0{};    ///< MET with lambda(t0)
  double phi_dot_identity_residual{};
  double phi_dot_identity_printed_residual{};
  double etilde_minus_e{};
  double etilde_minus_e_estimate{};
  double xi{};
};

DiagnosticRow diagnose(const Sample& sample, const Params& p, double lambda0);
std::vector<DiagnosticRow> diagnose(const std::vector<Sample>& samples, const Params& p);

/// Main-equation residual Etilde - g(cos) theta_dot^2 - V(cos, D, lambda)
/// using the sample's own lambda; an algebraic identity.
std::vector<double> met_residual(const std::vector<Sample>& samples, const Params& p);

// ---------------------------------------------------------------------------
// Integrated form of the equations, checked by central differences
// ---------------------------------------------------------------------------

struct IntegratedFormResiduals
{
  double dt{};
  std::vector<double> t;
  std::vector<double> lambda_rate;       ///< FD d(lambda)/dt, should be 0
  std::vector<double> routh_residual;    ///< FD dD/dt - gamma m (z x a).vA_dot / (alpha sqrt(d))
  std::vector<double> etilde_residual;   ///< FD dEtilde/dt - m (omega x a).vA_dot
  double max_lambda_rate{};
  double rms_routh{};
  double rms_etilde{};
  double max_routh{};
  double max_etilde{};
};

/// Resamples the trajectory at spacing dt and compares central-difference
/// rates of lambda, D and Etilde with the right-hand sides of the integrated
/// form. vA_dot is the central difference of the inertial contact velocity,
/// with the precession angle integrated from phi_dot.
IntegratedFormResiduals integrated_form_residuals(const Trajectory& traj,
                                                  const Params& p, double dt);

}  // namespace tippe

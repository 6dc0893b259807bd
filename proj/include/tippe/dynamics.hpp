#pragma once

#include <array>
#include <cmath>

#include <Eigen/Core>

#include "tippe/model.hpp"

namespace tippe {

/// Time derivative of State, component by component.
template <typename T>
struct BasicStateDerivative
{
  T d_theta{};
  T d_theta_dot{};
  T d_phi_dot{};
  T d_omega3{};
  T d_nu_x{};
  T d_nu_y{};
};

using StateDerivative = BasicStateDerivative<double>;

inline std::array<double, 6> to_array(const StateDerivative& d)
{
  return {d.d_theta, d.d_theta_dot, d.d_phi_dot,
          d.d_omega3, d.d_nu_x, d.d_nu_y};
}

/// Vertical reaction at the contact point [N]. The one-sided constraint is
/// only physical while gn > 0.
struct NormalForce
{
  double gn{};
  bool nonpositive() const { return !(gn > 0.0); }
};

/// Normal force that keeps the contact point on the plane to second order.
/// Throws ModelBreakdown when the denominator is within 1e-12 * I1 of zero.
NormalForce normal_force(const State& s, const Params& p);

/// Euler-angle equations of motion with the normal force closed in.
/// Throws PoleSingularity when |sin(theta)| < 1e-10.
StateDerivative euler_rhs(const State& s, const Params& p);

/// Same, with a precomputed normal force.
StateDerivative euler_rhs(const State& s, const Params& p, NormalForce gn);

// ---------------------------------------------------------------------------
// Scalar-generic forms, instantiated for double by the functions above and
// for long double where rounding of the double path is itself under test.
// ---------------------------------------------------------------------------

template <typename T>
T normal_force_value(const BasicState<T>& s, const Params& p)
{
  using std::abs;
  using std::cos;
  using std::sin;
  const T m = p.m();
  const T R = p.R();
  const T a = p.alpha();
  const T I1 = p.I1();
  const T I3 = p.I3();
  const T st = sin(s.theta);
  const T ct = cos(s.theta);
  const T st2 = st * st;

  const T num =
      m * T(p.g()) * I1 +
      m * R * a *
          (ct * (I1 * s.phi_dot * s.phi_dot * st2 + I1 * s.theta_dot * s.theta_dot) -
           I3 * s.phi_dot * s.omega3 * st2);
  const T den = I1 + m * R * R * a * a * st2 -
                m * R * R * a * st * (T(1) - a * ct) * T(p.mu()) * s.nu_x;
  if (abs(den) <= T(1e-12) * I1)
  {
    throw ModelBreakdown("normal force: constraint denominator vanishes");
  }
  return num / den;
}

template <typename T>
BasicStateDerivative<T> euler_rhs_value(const BasicState<T>& s, const Params& p, T gn)
{
  using std::abs;
  using std::cos;
  using std::sin;
  const T st = sin(s.theta);
  if (abs(st) < T(1e-10))
  {
    throw PoleSingularity("euler_rhs: theta at a pole of the Euler chart");
  }
  const T ct = cos(s.theta);
  const T m = p.m();
  const T R = p.R();
  const T a = p.alpha();
  const T I1 = p.I1();
  const T I3 = p.I3();
  const T mu = p.mu();

  const T th_d = s.theta_dot;
  const T ph_d = s.phi_dot;
  const T w3 = s.omega3;
  const T nx = s.nu_x;
  const T ny = s.nu_y;
  const T one_m_act = T(1) - a * ct;
  const T a_m_ct = a - ct;

  BasicStateDerivative<T> d;
  d.d_theta = th_d;
  d.d_theta_dot = st / I1 * (I1 * ph_d * ph_d * ct - I3 * w3 * ph_d - R * a * gn) +
                  R * mu * gn * nx / I1 * one_m_act;
  d.d_phi_dot = (I3 * th_d * w3 - T(2) * I1 * th_d * ph_d * ct -
                 mu * gn * ny * R * a_m_ct) /
                (I1 * st);
  d.d_omega3 = -mu * gn * ny * R * st / I3;
  d.d_nu_x = R * st / I1 *
                 (ph_d * w3 * (I3 * one_m_act - I1) + gn * R * a * one_m_act -
                  I1 * a * (th_d * th_d + ph_d * ph_d * st * st)) -
             mu * gn * nx / (m * I1) * (I1 + m * R * R * one_m_act * one_m_act) +
             ph_d * ny;
  d.d_nu_y = -mu * gn * ny / (m * I1 * I3) *
                 (I1 * I3 + m * R * R * I3 * a_m_ct * a_m_ct +
                  m * R * R * I1 * st * st) +
             w3 * th_d * R / I1 * (I3 * a_m_ct + I1 * ct) - ph_d * nx;
  return d;
}

// ---------------------------------------------------------------------------
// Vector-form oracle
// ---------------------------------------------------------------------------

/// Time derivative of (L, axis3, vA) in inertial coordinates, plus the normal
/// force that enforces d/dt (vA . z) = 0.
struct VectorStateRate
{
  Eigen::Vector3d L_dot;
  Eigen::Vector3d axis3_dot;
  Eigen::Vector3d vA_dot;
  double gn{};
};

/// Newton-Euler equations for the rolling and gliding sphere:
///   m s'' = F - m g z,  L' = a x F,  axis3' = (L x axis3) / I1,
/// with F = gn z - mu gn vA and a = R (alpha axis3 - z). The normal force is
/// solved from the vertical component of the differentiated contact condition,
/// independently of the Euler-angle closure.
VectorStateRate vector_rhs(const VectorState& v, const Params& p);

/// Express a vector-form rate as Euler-angle derivatives at the given pose.
/// Uses only frame kinematics: omega3 = L.e3/I3, theta_dot = L.y/I1,
/// L.z = I1 phi_dot sin^2 + I3 omega3 cos, nu = vA in the rotating frame.
StateDerivative vector_rate_to_euler(const EulerPose& pose,
                                     const VectorStateRate& rate,
                                     const Params& p);

}  // namespace tippe

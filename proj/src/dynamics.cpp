#include "tippe/dynamics.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace tippe {

NormalForce normal_force(const State& s, const Params& p)
{
  return NormalForce{normal_force_value(s, p)};
}

StateDerivative euler_rhs(const State& s, const Params& p)
{
  return euler_rhs(s, p, normal_force(s, p));
}

StateDerivative euler_rhs(const State& s, const Params& p, NormalForce force)
{
  return euler_rhs_value(s, p, force.gn);
}

namespace {

struct ForceResponse
{
  Eigen::Vector3d L_dot;
  Eigen::Vector3d vA_dot;
};

}  // namespace

VectorStateRate vector_rhs(const VectorState& v, const Params& p)
{
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  const double I1 = p.I1();
  const double I3 = p.I3();
  const double m = p.m();

  const Eigen::Vector3d& e3 = v.axis3;
  const double L3 = v.L.dot(e3);
  const Eigen::Vector3d omega = v.L / I1 + (1.0 / I3 - 1.0 / I1) * L3 * e3;
  const Eigen::Vector3d a = p.R() * (p.alpha() * e3 - z);

  Eigen::Vector3d e3_dot = v.L.cross(e3) / I1;
  e3_dot -= e3_dot.dot(e3) * e3;
  const Eigen::Vector3d a_dot = p.R() * p.alpha() * e3_dot;

  // Everything is affine in gn: evaluate at gn = 0 and gn = 1 and solve
  // vA_dot . z = 0 for the actual value.
  auto respond = [&](double gn) {
    const Eigen::Vector3d F = gn * z - p.mu() * gn * v.vA;
    ForceResponse r;
    r.L_dot = a.cross(F);
    const Eigen::Vector3d omega_dot =
        r.L_dot / I1 +
        (1.0 / I3 - 1.0 / I1) * (r.L_dot.dot(e3) * e3 + L3 * e3_dot);
    const Eigen::Vector3d s_ddot = F / m - p.g() * z;
    r.vA_dot = s_ddot + omega_dot.cross(a) + omega.cross(a_dot);
    return r;
  };

  const ForceResponse r0 = respond(0.0);
  const ForceResponse r1 = respond(1.0);
  const double slope = r1.vA_dot.z() - r0.vA_dot.z();
  if (std::abs(slope) <= 1e-12 * std::abs(r0.vA_dot.z()) || slope == 0.0)
  {
    throw ModelBreakdown("vector_rhs: contact constraint cannot be closed");
  }
  const double gn = -r0.vA_dot.z() / slope;
  const ForceResponse r = respond(gn);

  VectorStateRate out;
  out.L_dot = r.L_dot;
  out.axis3_dot = e3_dot;
  out.vA_dot = r.vA_dot;
  out.vA_dot.z() = 0.0;
  out.gn = gn;
  return out;
}

StateDerivative vector_rate_to_euler(const EulerPose& pose,
                                     const VectorStateRate& rate,
                                     const Params& p)
{
  const State& s = pose.state;
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);
  const Eigen::Vector3d x{std::cos(pose.phi), std::sin(pose.phi), 0.0};
  const Eigen::Vector3d y{-std::sin(pose.phi), std::cos(pose.phi), 0.0};
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d e3 = st * x + ct * z;
  const VectorState v = euler_to_vector(s, p, pose.phi);

  StateDerivative d;
  d.d_theta = s.theta_dot;
  d.d_omega3 = rate.L_dot.dot(e3) / p.I3();
  // d/dt (L . y) with y' = -phi_dot x
  d.d_theta_dot = (rate.L_dot.dot(y) - s.phi_dot * v.L.dot(x)) / p.I1();
  // d/dt (L . z) = I1 (phi_ddot st^2 + 2 phi_dot st ct theta_dot)
  //               + I3 (omega3_dot ct - omega3 st theta_dot)
  d.d_phi_dot = (rate.L_dot.dot(z) -
                 2.0 * p.I1() * s.phi_dot * st * ct * s.theta_dot -
                 p.I3() * (d.d_omega3 * ct - s.omega3 * st * s.theta_dot)) /
                (p.I1() * st * st);
  // x' = phi_dot y, y' = -phi_dot x
  d.d_nu_x = rate.vA_dot.dot(x) + s.phi_dot * s.nu_y;
  d.d_nu_y = rate.vA_dot.dot(y) - s.phi_dot * s.nu_x;
  return d;
}

}  // namespace tippe

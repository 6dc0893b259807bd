#include "tippe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tippe/dynamics.hpp"
#include "tippe/potential.hpp"

namespace tippe {

double energy_rate(const State& s, const Params& p)
{
  const double gn = normal_force(s, p).gn;
  return -p.mu() * gn * (s.nu_x * s.nu_x + s.nu_y * s.nu_y);
}

Torque torque(const State& s, const Params& p)
{
  const double gn = normal_force(s, p).gn;
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);
  const double R = p.R();
  const double a = p.alpha();
  const double mu = p.mu();
  return {-R * (1.0 - a * ct) * mu * gn * s.nu_y,
          -R * a * gn * st + R * mu * gn * s.nu_x * (1.0 - a * ct),
          -R * a * mu * gn * s.nu_y * st};
}

double gyroscopic_balance(const State& s, const Params& p)
{
  return p.I3() * s.omega3 - p.I1() * s.phi_dot * std::cos(s.theta);
}

PhiDotIdentity phi_dot_identity(const State& s, const Params& p, double lambda)
{
  const double st = std::sin(s.theta);
  const double lhs = s.phi_dot * st * st;
  const double am = p.alpha() - std::cos(s.theta);
  return {lhs - (lambda / (p.R() * p.I1()) + p.I3() / p.I1() * s.omega3 * am),
          lhs - (lambda / (p.R() * p.I3()) + s.omega3 * am)};
}

Eigen::Vector3d omega_cross_a(const State& s, const Params& p)
{
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);
  const double R = p.R();
  const double a = p.alpha();
  return {R * s.theta_dot * (a * ct - 1.0),
          R * st * (s.omega3 + s.phi_dot * (a - ct)),
          -R * a * s.theta_dot * st};
}

EnergyGap etilde_minus_e(const State& s, const Params& p)
{
  const Eigen::Vector3d wa = omega_cross_a(s, p);
  const double m = p.m();
  const double v2 = s.nu_x * s.nu_x + s.nu_y * s.nu_y;
  return {-0.5 * m * v2 + m * (s.nu_x * wa.x() + s.nu_y * wa.y()),
          -0.5 * m * s.nu_x * s.nu_x + 0.5 * m * s.nu_y * (2.0 * wa.norm() - s.nu_y)};
}

namespace {

double met_value(const State& s, const Params& p, double lambda)
{
  const double z = std::cos(s.theta);
  return modified_energy(s, p) - mass_function(z, p) * s.theta_dot * s.theta_dot -
         effective_potential(z, routh(s, p), lambda, p);
}

}  // namespace

DiagnosticRow diagnose(const Sample& sample, const Params& p, double lambda0)
{
  const State& s = sample.state;
  DiagnosticRow r;
  r.t = sample.t;
  r.gn = normal_force(s, p).gn;
  r.lambda = jellett(s, p);
  r.D = routh(s, p);
  r.Etilde = modified_energy(s, p);
  const EnergySplit e = energy_split(s, p);
  r.E = e.E;
  r.E_trans = e.E_trans;
  r.E_rot = e.E_rot;
  r.E_pot = e.E_pot;
  r.E_dot = -p.mu() * r.gn * (s.nu_x * s.nu_x + s.nu_y * s.nu_y);
  const Torque tau = torque(s, p);
  r.tau_x = tau.x;
  r.tau_y = tau.y;
  r.tau_z = tau.z;
  r.met_residual = met_value(s, p, r.lambda);
  r.met_residual_lambda0 = met_value(s, p, lambda0);
  const PhiDotIdentity id = phi_dot_identity(s, p, r.lambda);
  r.phi_dot_identity_residual = id.exact;
  r.phi_dot_identity_printed_residual = id.printed;
  const EnergyGap gap = etilde_minus_e(s, p);
  r.etilde_minus_e = gap.exact;
  r.etilde_minus_e_estimate = gap.estimate;
  r.xi = gyroscopic_balance(s, p);
  return r;
}

std::vector<DiagnosticRow> diagnose(const std::vector<Sample>& samples, const Params& p)
{
  std::vector<DiagnosticRow> rows;
  if (samples.empty())
  {
    return rows;
  }
  const double lambda0 = jellett(samples.front().state, p);
  rows.reserve(samples.size());
  for (const Sample& s : samples)
  {
    rows.push_back(diagnose(s, p, lambda0));
  }
  return rows;
}

std::vector<double> met_residual(const std::vector<Sample>& samples, const Params& p)
{
  std::vector<double> r;
  r.reserve(samples.size());
  for (const Sample& s : samples)
  {
    r.push_back(met_value(s.state, p, jellett(s.state, p)));
  }
  return r;
}

IntegratedFormResiduals integrated_form_residuals(const Trajectory& traj,
                                                  const Params& p, double dt)
{
  IntegratedFormResiduals out;
  out.dt = dt;
  const std::vector<Sample> xs = resample(traj, dt);
  if (xs.size() < 3)
  {
    return out;
  }

  const std::size_t n = xs.size();
  const PrecessionAngle phi_of(traj);
  std::vector<double> lam(n), D(n), Et(n), phi(n), vx(n), vy(n);
  for (std::size_t k = 0; k < n; ++k)
  {
    const State& s = xs[k].state;
    lam[k] = jellett(s, p);
    D[k] = routh(s, p);
    Et[k] = modified_energy(s, p);
    phi[k] = phi_of(xs[k].t);
    vx[k] = s.nu_x * std::cos(phi[k]) - s.nu_y * std::sin(phi[k]);
    vy[k] = s.nu_x * std::sin(phi[k]) + s.nu_y * std::cos(phi[k]);
  }

  double sum_routh = 0.0;
  double sum_etilde = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k)
  {
    const State& s = xs[k].state;
    const double h2 = xs[k + 1].t - xs[k - 1].t;
    const double dvx = (vx[k + 1] - vx[k - 1]) / h2;
    const double dvy = (vy[k + 1] - vy[k - 1]) / h2;
    // Inertial contact acceleration, projected on the rotating axes.
    const double c = std::cos(phi[k]);
    const double sn = std::sin(phi[k]);
    const double ax = c * dvx + sn * dvy;
    const double ay = -sn * dvx + c * dvy;

    const double st = std::sin(s.theta);
    const double sqrt_d = std::sqrt(d_of_z(std::cos(s.theta), p));
    // (z x a) = (0, R alpha sin(theta), 0) in the rotating frame.
    const double routh_rhs =
        p.gamma() * p.m() / (p.alpha() * sqrt_d) * (p.R() * p.alpha() * st) * ay;
    const Eigen::Vector3d wa = omega_cross_a(s, p);
    const double etilde_rhs = p.m() * (wa.x() * ax + wa.y() * ay);

    const double lam_rate = (lam[k + 1] - lam[k - 1]) / h2;
    const double r_routh = (D[k + 1] - D[k - 1]) / h2 - routh_rhs;
    const double r_etilde = (Et[k + 1] - Et[k - 1]) / h2 - etilde_rhs;

    out.t.push_back(xs[k].t);
    out.lambda_rate.push_back(lam_rate);
    out.routh_residual.push_back(r_routh);
    out.etilde_residual.push_back(r_etilde);
    out.max_lambda_rate = std::max(out.max_lambda_rate, std::abs(lam_rate));
    out.max_routh = std::max(out.max_routh, std::abs(r_routh));
    out.max_etilde = std::max(out.max_etilde, std::abs(r_etilde));
    sum_routh += r_routh * r_routh;
    sum_etilde += r_etilde * r_etilde;
  }
  const auto m = static_cast<double>(out.t.size());
  out.rms_routh = std::sqrt(sum_routh / m);
  out.rms_etilde = std::sqrt(sum_etilde / m);
  return out;
}

}  // namespace tippe

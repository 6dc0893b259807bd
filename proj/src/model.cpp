#include "tippe/model.hpp"

#include <cmath>

namespace tippe {

namespace {

void require(bool ok, const std::string& what)
{
  if (!ok)
  {
    throw std::invalid_argument("invalid parameters: " + what);
  }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

Params::Params(const PhysicalConstants& c) : c_(c)
{
  require(std::isfinite(c.alpha) && c.alpha > 0.0 && c.alpha < 1.0,
          "alpha must lie in (0, 1)");
  require(positive(c.m), "m must be positive");
  require(positive(c.R), "R must be positive");
  require(positive(c.I1), "I1 must be positive");
  require(positive(c.I3), "I3 must be positive");
  require(positive(c.g), "g must be positive");
  require(std::isfinite(c.mu) && c.mu >= 0.0, "mu must be nonnegative");

  gamma_ = c.I1 / c.I3;
  sigma_ = c.m * c.R * c.R / c.I3;
  inversion_window_ = 1.0 - c.alpha < gamma_ && gamma_ < 1.0 + c.alpha;
  rational_window_ = 1.0 - c.alpha * c.alpha < gamma_ && gamma_ < 1.0;
}

Params Params::with_mu(double mu) const
{
  PhysicalConstants c = c_;
  c.mu = mu;
  return Params{c};
}

Params make_params(double m, double R, double alpha, double I1, double I3,
                   double g, double mu)
{
  return Params{PhysicalConstants{m, R, alpha, I1, I3, g, mu}};
}

Params reference_params()
{
  const double m = 0.02;
  const double R = 0.02;
  const double mR2 = m * R * R;
  return make_params(m, R, 0.3, 131.0 / 350.0 * mR2, 2.0 / 5.0 * mR2, 9.82,
                     0.3);
}

RationalityReport rationality_check(double alpha, double gamma, double sigma,
                                    double tol)
{
  RationalityReport r;
  const double denom = gamma + alpha * alpha - 1.0;
  r.printed_residual = sigma * denom - (1.0 - alpha);
  r.alternative_residual = sigma * denom - (1.0 - gamma);
  r.denominator_degenerate = std::abs(denom) <= 1e-15;
  if (r.denominator_degenerate)
  {
    return r;
  }
  r.printed_sigma = (1.0 - alpha) / denom;
  r.alternative_sigma = (1.0 - gamma) / denom;
  r.printed_holds = std::abs(r.printed_residual) <= tol;
  r.alternative_holds = std::abs(r.alternative_residual) <= tol;
  return r;
}

RationalityReport rationality_check(const Params& p, double tol)
{
  return rationality_check(p.alpha(), p.gamma(), p.sigma(), tol);
}

bool is_finite(const State& s)
{
  for (double v : to_array(s))
  {
    if (!std::isfinite(v))
    {
      return false;
    }
  }
  return true;
}

// Frames: (x, y, z) is the inertial frame rotated by phi about Z; the body
// frame (1, 2, 3) is (x, y, z) rotated by theta about y, so
//   e1 = cos(theta) x - sin(theta) z,  e2 = y,  e3 = sin(theta) x + cos(theta) z.
VectorState euler_to_vector(const State& s, const Params& p, double phi)
{
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);
  const Eigen::Vector3d x{std::cos(phi), std::sin(phi), 0.0};
  const Eigen::Vector3d y{-std::sin(phi), std::cos(phi), 0.0};
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d e1 = ct * x - st * z;
  const Eigen::Vector3d e3 = st * x + ct * z;

  VectorState v;
  v.L = p.I1() * (-s.phi_dot * st) * e1 + p.I1() * s.theta_dot * y +
        p.I3() * s.omega3 * e3;
  v.axis3 = e3;
  v.vA = s.nu_x * x + s.nu_y * y;
  v.vA.z() = 0.0;
  return v;
}

EulerPose vector_to_euler(const VectorState& v, const Params& p)
{
  const Eigen::Vector3d& e3 = v.axis3;
  if (std::abs(e3.z()) > 1.0 - 1e-12)
  {
    throw PoleSingularity("vector_to_euler: symmetry axis is vertical, phi undefined");
  }
  const double horizontal = std::hypot(e3.x(), e3.y());
  EulerPose out;
  out.phi = std::atan2(e3.y(), e3.x());
  const double theta = std::atan2(horizontal, e3.z());
  const double st = std::sin(theta);
  const double ct = std::cos(theta);

  const Eigen::Vector3d x{std::cos(out.phi), std::sin(out.phi), 0.0};
  const Eigen::Vector3d y{-std::sin(out.phi), std::cos(out.phi), 0.0};
  const Eigen::Vector3d e1 = ct * x - st * Eigen::Vector3d::UnitZ();

  State& s = out.state;
  s.theta = theta;
  s.omega3 = v.L.dot(e3) / p.I3();
  s.theta_dot = v.L.dot(y) / p.I1();
  s.phi_dot = -v.L.dot(e1) / (p.I1() * st);
  s.nu_x = v.vA.dot(x);
  s.nu_y = v.vA.dot(y);
  return out;
}

}  // namespace tippe

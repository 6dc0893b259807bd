#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace tippe {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// The Euler-angle chart is singular at theta = 0 and theta = pi.
class PoleSingularity : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// The contact constraint cannot be closed (normal-force denominator vanishes).
class ModelBreakdown : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Raw physical constants of the top, as read from configuration.
struct PhysicalConstants
{
  double m{};      ///< mass [kg]
  double R{};      ///< radius of the spherical body [m]
  double alpha{};  ///< centre-of-mass offset as a fraction of R
  double I1{};     ///< transverse moment of inertia [kg m^2]
  double I3{};     ///< axial moment of inertia [kg m^2]
  double g{};      ///< gravitational acceleration [m/s^2]
  double mu{};     ///< viscous gliding-friction coefficient [s/m]
};

/**
 * Validated parameter set with the two derived ratios cached.
 *
 * gamma = I1/I3 and sigma = m R^2 / I3 are computed once so that every formula
 * downstream sees the same rounded value.
 */
class Params
{
public:
  /// Throws std::invalid_argument on alpha outside (0,1), nonpositive m, R, I1,
  /// I3, g, negative or non-finite mu.
  explicit Params(const PhysicalConstants& c);

  double m() const { return c_.m; }
  double R() const { return c_.R; }
  double alpha() const { return c_.alpha; }
  double I1() const { return c_.I1; }
  double I3() const { return c_.I3; }
  double g() const { return c_.g; }
  double mu() const { return c_.mu; }
  double gamma() const { return gamma_; }
  double sigma() const { return sigma_; }

  /// 1 - alpha < gamma < 1 + alpha (window where inversion is the asymptotic outcome).
  bool inversion_window() const { return inversion_window_; }
  /// 1 - alpha^2 < gamma < 1 (rational effective-potential window).
  bool rational_window() const { return rational_window_; }

  const PhysicalConstants& constants() const { return c_; }

  /// Same constants with a different friction coefficient.
  Params with_mu(double mu) const;

private:
  PhysicalConstants c_;
  double gamma_;
  double sigma_;
  bool inversion_window_;
  bool rational_window_;
};

Params make_params(double m, double R, double alpha, double I1, double I3,
                   double g, double mu);

/// The commercially available toy top used throughout the reference runs:
/// m = 0.02 kg, R = 0.02 m, alpha = 0.3, I3 = 2/5 mR^2, I1 = 131/350 mR^2,
/// g = 9.82 m/s^2, mu = 0.3.
Params reference_params();

/// Residuals of the two candidate rationality conditions.
///
/// printed:     sigma (gamma + alpha^2 - 1) - (1 - alpha)
/// alternative: sigma (gamma + alpha^2 - 1) - (1 - gamma)
struct RationalityReport
{
  double printed_residual{};
  double alternative_residual{};
  bool printed_holds{};
  bool alternative_holds{};
  /// gamma + alpha^2 - 1 == 0: the condition solved for sigma is undefined.
  bool denominator_degenerate{};
  std::optional<double> printed_sigma;      ///< (1-alpha)/(gamma+alpha^2-1)
  std::optional<double> alternative_sigma;  ///< (1-gamma)/(gamma+alpha^2-1)
};

RationalityReport rationality_check(const Params& p, double tol);
RationalityReport rationality_check(double alpha, double gamma, double sigma,
                                    double tol);

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

/// Six dynamical unknowns of the rolling-and-gliding top in Euler-angle form.
/// nu_x, nu_y are the contact-point gliding velocity components in the frame
/// rotated by phi about the vertical.
template <typename T>
struct BasicState
{
  T theta{};
  T theta_dot{};
  T phi_dot{};
  T omega3{};
  T nu_x{};
  T nu_y{};
};

using State = BasicState<double>;

inline std::array<double, 6> to_array(const State& s)
{
  return {s.theta, s.theta_dot, s.phi_dot, s.omega3, s.nu_x, s.nu_y};
}

inline State from_array(const std::array<double, 6>& y)
{
  return {y[0], y[1], y[2], y[3], y[4], y[5]};
}

bool is_finite(const State& s);

/// Spin rate about the symmetry axis relative to the precessing frame.
inline double psi_dot(const State& s)
{
  return s.omega3 - s.phi_dot * std::cos(s.theta);
}

/// (L, axis3, vA) in inertial coordinates.
struct VectorState
{
  Eigen::Vector3d L;      ///< angular momentum about the centre of mass
  Eigen::Vector3d axis3;  ///< unit symmetry axis
  Eigen::Vector3d vA;     ///< gliding velocity of the contact point, vA.z == 0
};

/// Euler state together with the precession angle needed to place it in the
/// inertial frame.
struct EulerPose
{
  State state;
  double phi{};
};

VectorState euler_to_vector(const State& s, const Params& p, double phi);

/// Throws PoleSingularity when |axis3 . z| > 1 - 1e-12 (phi undefined).
EulerPose vector_to_euler(const VectorState& v, const Params& p);

}  // namespace tippe

#pragma once

#include <cmath>

#include "tippe/model.hpp"

namespace tippe {

/// g(z) = I3 (sigma ((alpha - z)^2 + 1 - z^2) + gamma) / 2, the coefficient of
/// theta_dot^2 in the main equation. Throws std::domain_error for |z| > 1.
double mass_function(double z, const Params& p);

/// Effective potential V(z, D, lambda) of the main equation
/// Etilde = g(cos theta) theta_dot^2 + V(cos theta, D, lambda).
/// Throws std::domain_error for |z| >= 1.
double effective_potential(double z, double D, double lambda, const Params& p);

/// Same expression in any scalar type, without the domain check.
template <typename T>
T effective_potential_unchecked(const T& z, const T& D, const T& lambda, const Params& p)
{
  using std::sqrt;
  const double R = p.R();
  const double gam = p.gamma();
  const T d = p.gamma() + p.sigma() * (p.alpha() - z) * (p.alpha() - z) +
              p.sigma() * p.gamma() * (1.0 - z * z);
  const T num = lambda * sqrt(d) + R * D * (p.alpha() - z);
  return p.m() * p.g() * R * (1.0 - p.alpha() * z) +
         num * num / (2.0 * p.I3() * R * R * gam * gam * (1.0 - z * z)) +
         (R * R * D * D - p.sigma() * lambda * lambda) / (2.0 * R * R * p.I1());
}

struct Thresholds
{
  double lambda_thres{};
  double lambda_up{};
  /// lambda_thres > lambda_up, expected whenever 1 - alpha^2 < gamma < 1 + alpha.
  bool ordered{};
  /// 1 - alpha^2 < gamma < 1 + alpha, the window where the ordering is claimed.
  bool ordering_window{};
};

/// Jellett thresholds for the inverted state to be the unique attractor.
/// Throws std::domain_error outside 1 - alpha < gamma < 1 + alpha.
Thresholds thresholds(const Params& p);

/// Closed-form constants of the two asymptotic (non-gliding) spinning states
/// for a given Jellett value. Index 0 is the upright state, 1 the inverted one.
struct AsymptoticConstants
{
  double lambda{};
  double lambda_thres{};  ///< NaN when gamma is outside the threshold window
  double lambda_up{};     ///< NaN when gamma is outside the threshold window
  double L0{};
  double L1{};
  double D0{};
  double D1{};
  double Etilde0{};
  double Etilde1{};
  double omega3_upright{};   ///< L0 / I3
  double omega3_inverted{};  ///< -L1 / I3
};

AsymptoticConstants asymptotic_constants(double lambda, const Params& p);

/// Upper estimate of the nutation period near the upright state,
/// 21.95 R I3 gamma (alpha + 1 - gamma) / (alpha lambda + alpha R D sqrt(gamma + alpha^2 - 1)).
/// NaN when gamma + alpha^2 <= 1.
double nutation_period_bound(double lambda, double D, const Params& p);

/// Routh values slightly inside the two asymptotic levels:
/// D1 + delta / (R (1 + alpha) sqrt(gamma + alpha^2 - 1)) and
/// D0 - delta / (R (1 - alpha) sqrt(gamma + alpha^2 - 1)).
double routh_near_inverted(double lambda, double delta, const Params& p);
double routh_near_upright(double lambda, double delta, const Params& p);

struct PotentialMinimum
{
  double z{};
  double V{};
  /// The minimiser sits on the search bracket boundary: V is monotone there
  /// and no interior minimum was found.
  bool at_boundary{};
};

struct Bracket
{
  double lo{-1.0 + 1e-9};
  double hi{1.0 - 1e-9};
};

/// Minimise V(., D, lambda) over the bracket: a uniform scan of `scan_points`
/// values picks the best cell, golden-section search refines it to 1e-10 in z.
/// Throws std::domain_error unless -1 < lo < hi < 1.
PotentialMinimum potential_minimum(double D, double lambda, const Params& p,
                                   Bracket bracket = {}, int scan_points = 4001);

}  // namespace tippe

#include "tippe/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tippe/analysis.hpp"

namespace tippe {

double mass_function(double z, const Params& p)
{
  if (!(std::abs(z) <= 1.0))
  {
    throw std::domain_error("mass_function: |z| must not exceed 1");
  }
  const double am = p.alpha() - z;
  return 0.5 * p.I3() * (p.sigma() * (am * am + 1.0 - z * z) + p.gamma());
}

double effective_potential(double z, double D, double lambda, const Params& p)
{
  if (!(std::abs(z) < 1.0))
  {
    throw std::domain_error("effective_potential: z must lie strictly inside (-1, 1)");
  }
  return effective_potential_unchecked(z, D, lambda, p);
}

Thresholds thresholds(const Params& p)
{
  if (!p.inversion_window())
  {
    throw std::domain_error("thresholds: gamma outside (1 - alpha, 1 + alpha)");
  }
  const double a = p.alpha();
  const double gam = p.gamma();
  const double R = p.R();
  const double base = std::sqrt(p.m() * p.g() * R * R * R * a * p.I3());
  Thresholds t;
  t.lambda_thres = base * (1.0 + a) * (1.0 + a) / std::sqrt(1.0 + a - gam);
  t.lambda_up = base * (1.0 - a) * (1.0 - a) / std::sqrt(a + gam - 1.0);
  t.ordered = t.lambda_thres > t.lambda_up;
  t.ordering_window = 1.0 - a * a < gam && gam < 1.0 + a;
  return t;
}

AsymptoticConstants asymptotic_constants(double lambda, const Params& p)
{
  const double a = p.alpha();
  const double R = p.R();
  const double mgR = p.m() * p.g() * R;
  AsymptoticConstants c;
  c.lambda = lambda;
  if (p.inversion_window())
  {
    const Thresholds t = thresholds(p);
    c.lambda_thres = t.lambda_thres;
    c.lambda_up = t.lambda_up;
  }
  else
  {
    c.lambda_thres = std::numeric_limits<double>::quiet_NaN();
    c.lambda_up = std::numeric_limits<double>::quiet_NaN();
  }
  c.L0 = lambda / (R * (1.0 - a));
  c.L1 = lambda / (R * (1.0 + a));
  c.D0 = lambda * std::sqrt(d_of_z(1.0, p)) / (R * (1.0 - a));
  c.D1 = -lambda * std::sqrt(d_of_z(-1.0, p)) / (R * (1.0 + a));
  c.Etilde0 = lambda * lambda / (2.0 * R * R * p.I3() * (1.0 - a) * (1.0 - a)) + mgR * (1.0 - a);
  c.Etilde1 = lambda * lambda / (2.0 * R * R * p.I3() * (1.0 + a) * (1.0 + a)) + mgR * (1.0 + a);
  c.omega3_upright = c.L0 / p.I3();
  c.omega3_inverted = -c.L1 / p.I3();
  return c;
}

double nutation_period_bound(double lambda, double D, const Params& p)
{
  const double a = p.alpha();
  const double gam = p.gamma();
  const double q = gam + a * a - 1.0;
  if (!(q > 0.0))
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return 21.95 * p.R() * p.I3() * gam * (a + 1.0 - gam) /
         (a * lambda + a * p.R() * D * std::sqrt(q));
}

double routh_near_inverted(double lambda, double delta, const Params& p)
{
  const double a = p.alpha();
  return asymptotic_constants(lambda, p).D1 +
         delta / (p.R() * (1.0 + a) * std::sqrt(p.gamma() + a * a - 1.0));
}

double routh_near_upright(double lambda, double delta, const Params& p)
{
  const double a = p.alpha();
  return asymptotic_constants(lambda, p).D0 -
         delta / (p.R() * (1.0 - a) * std::sqrt(p.gamma() + a * a - 1.0));
}

PotentialMinimum potential_minimum(double D, double lambda, const Params& p,
                                   Bracket bracket, int scan_points)
{
  if (!(bracket.lo > -1.0 && bracket.hi < 1.0 && bracket.lo < bracket.hi))
  {
    throw std::domain_error("potential_minimum: bracket must satisfy -1 < lo < hi < 1");
  }
  scan_points = std::max(scan_points, 3);
  auto V = [&](double z) { return effective_potential_unchecked(z, D, lambda, p); };

  const double step = (bracket.hi - bracket.lo) / (scan_points - 1);
  auto node = [&](int i) { return i == scan_points - 1 ? bracket.hi : bracket.lo + i * step; };
  int best = 0;
  double v_best = V(bracket.lo);
  for (int i = 1; i < scan_points; ++i)
  {
    const double v = V(node(i));
    if (v < v_best)
    {
      v_best = v;
      best = i;
    }
  }

  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, scan_points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = V(c);
  double fd = V(d);
  while (b - a > 1e-10)
  {
    if (fc < fd)
    {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = V(c);
    }
    else
    {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = V(d);
    }
  }

  PotentialMinimum res;
  res.z = 0.5 * (a + b);
  res.V = V(res.z);
  if (V(bracket.lo) <= res.V)
  {
    res.z = bracket.lo;
    res.V = V(bracket.lo);
  }
  if (V(bracket.hi) <= res.V)
  {
    res.z = bracket.hi;
    res.V = V(bracket.hi);
  }
  res.at_boundary = std::abs(res.z - bracket.lo) <= 1e-10 || std::abs(res.z - bracket.hi) <= 1e-10;
  return res;
}

}  // namespace tippe

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dual.hpp"
#include "tippe/analysis.hpp"
#include "tippe/integrator.hpp"
#include "tippe/potential.hpp"

namespace {

using testing_support::Dual;
using tippe::Params;
using tippe::State;

const State kReferenceIc{0.1, 0.0, 0.0, 155.0, 0.0, 0.0};

const tippe::IntegrationResult& reference_run()
{
  static const tippe::IntegrationResult run =
      tippe::integrate(kReferenceIc, tippe::reference_params(), tippe::IntegrationConfig{});
  return run;
}

TEST(Integrals, ReferenceInitialValues)
{
  const Params p = tippe::reference_params();
  EXPECT_NEAR(tippe::jellett(kReferenceIc, p), 6.8944e-6, 5e-10);
  EXPECT_NEAR(tippe::routh(kReferenceIc, p), 7.3008e-4, 5e-8);
  EXPECT_NEAR(tippe::modified_energy(kReferenceIc, p), 0.0421533, 5e-8);
  const auto e = tippe::energy_split(kReferenceIc, p);
  EXPECT_NEAR(e.E, 0.042153288, 5e-9);
  EXPECT_NEAR(e.E_pot, 0.0027555, 5e-8);
  EXPECT_NEAR(e.E_trans / e.E_pot, 0.3476, 5e-4);
  EXPECT_NEAR(e.E_trans + e.E_rot + e.E_pot, e.E, 1e-17);
}

TEST(Integrals, PotentialEnergyAtThePoles)
{
  const Params p = tippe::reference_params();
  const double mgR = p.m() * p.g() * p.R();
  EXPECT_NEAR(tippe::energy_split(State{1e-9, 0, 0, 0, 0, 0}, p).E_pot, mgR * 0.7, 1e-15);
  EXPECT_NEAR(tippe::energy_split(State{std::numbers::pi, 0, 0, 0, 0, 0}, p).E_pot, 0.0051064,
              5e-8);
}

TEST(Integrals, ModifiedEnergyEqualsEnergyWithoutGliding)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Params p = tippe::reference_params();
  for (int k = 0; k < 100; ++k)
  {
    const State s{1.5 + 1.4 * u(rng), 20 * u(rng), 200 * u(rng), 200 * u(rng), 0.0, 0.0};
    const double E = tippe::energy_split(s, p).E;
    EXPECT_NEAR(tippe::modified_energy(s, p), E, 1e-14 * E);
    EXPECT_EQ(tippe::etilde_minus_e(s, p).exact, 0.0);
  }
}

TEST(Integrals, EnergyGapExactFormula)
{
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Params p = tippe::reference_params();
  for (int k = 0; k < 100; ++k)
  {
    const State s{1.5 + 1.4 * u(rng), 20 * u(rng), 200 * u(rng), 200 * u(rng), 0.1 * u(rng),
                  0.1 * u(rng)};
    const double gap = tippe::modified_energy(s, p) - tippe::energy_split(s, p).E;
    EXPECT_NEAR(tippe::etilde_minus_e(s, p).exact, gap, 1e-14 * tippe::modified_energy(s, p));
  }
}

TEST(Integrals, EnergyGapEstimateWithAlignedGliding)
{
  // With nu_x = 0 and omega x a along y the estimate is exact.
  const Params p = tippe::reference_params();
  const State s{1.2, 0.0, 30.0, 40.0, 0.0, 0.05};
  const auto gap = tippe::etilde_minus_e(s, p);
  const auto wa = tippe::omega_cross_a(s, p);
  EXPECT_EQ(wa.x(), 0.0);
  ASSERT_GT(wa.y(), 0.0);
  EXPECT_NEAR(gap.estimate, gap.exact, 1e-18);
}

TEST(Integrals, TorqueAndGyroscopicBalance)
{
  const Params p = tippe::reference_params();
  const State s{0.7, 1.0, 20.0, 100.0, 0.01, -0.02};
  const auto tau = tippe::torque(s, p);
  const double gn = tippe::normal_force(s, p).gn;
  EXPECT_NEAR(tau.x, -p.R() * (1 - 0.3 * std::cos(0.7)) * 0.3 * gn * -0.02, 1e-18);
  EXPECT_NEAR(tau.z, -p.R() * 0.3 * 0.3 * gn * -0.02 * std::sin(0.7), 1e-18);
  EXPECT_NEAR(tippe::gyroscopic_balance(s, p), p.I3() * 100.0 - p.I1() * 20.0 * std::cos(0.7),
              1e-18);
  EXPECT_NEAR(tippe::energy_rate(s, p), -0.3 * gn * (1e-4 + 4e-4), 1e-18);
}

TEST(Integrals, PhiDotIdentityExactVanishesPrintedDoesNot)
{
  const Params p = tippe::reference_params();
  const State s{1.0, 0.0, 50.0, 80.0, 0.0, 0.0};
  const auto id = tippe::phi_dot_identity(s, p, tippe::jellett(s, p));
  EXPECT_NEAR(id.exact, 0.0, 1e-12 * 50.0);
  EXPECT_GT(std::abs(id.printed), 1.0);

  // I1 == I3 makes both forms agree
  const Params q = tippe::make_params(0.02, 0.02, 0.3, 3.2e-6, 3.2e-6, 9.82, 0.3);
  const auto id2 = tippe::phi_dot_identity(s, q, tippe::jellett(s, q));
  EXPECT_NEAR(id2.printed, id2.exact, 1e-12);
}

TEST(Potential, MassFunctionAndDomain)
{
  const Params p = tippe::reference_params();
  EXPECT_NEAR(tippe::mass_function(1.0, p), 0.5 * p.I3() * (2.5 * 0.49 + p.gamma()), 1e-20);
  EXPECT_THROW(tippe::mass_function(1.1, p), std::domain_error);
  EXPECT_THROW(tippe::effective_potential(1.0, 1e-4, 1e-6, p), std::domain_error);
}

TEST(Potential, MainEquationIdentityOnRandomStates)
{
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Params p = tippe::reference_params();
  for (int k = 0; k < 500; ++k)
  {
    const State s{1.5 + 1.5 * u(rng), 20 * u(rng), 200 * u(rng), 200 * u(rng), 0.1 * u(rng),
                  0.1 * u(rng)};
    const double z = std::cos(s.theta);
    const double Et = tippe::modified_energy(s, p);
    const double rhs = tippe::mass_function(z, p) * s.theta_dot * s.theta_dot +
                       tippe::effective_potential(z, tippe::routh(s, p), tippe::jellett(s, p), p);
    EXPECT_NEAR(rhs, Et, 1e-11 * Et) << k;
  }
}

TEST(Potential, ReferenceTrajectoryMetResidual)
{
  const Params p = tippe::reference_params();
  const auto& samples = reference_run().trajectory.samples;
  const auto met = tippe::met_residual(samples, p);
  double worst = 0.0;
  for (double r : met)
  {
    worst = std::max(worst, std::abs(r));
  }
  EXPECT_LE(worst, 1e-10 * 0.0421533);
}

TEST(Thresholds, ReferenceValues)
{
  const auto t = tippe::thresholds(tippe::reference_params());
  EXPECT_NEAR(t.lambda_thres, 3.4389e-6, 5e-10);
  EXPECT_NEAR(t.lambda_up, 1.2395e-6, 5e-10);
  EXPECT_TRUE(t.ordered);
  EXPECT_TRUE(t.ordering_window);
  EXPECT_NEAR(6.8944e-6 / t.lambda_thres, 2.005, 1e-3);
}

TEST(Thresholds, WindowViolationThrows)
{
  const Params p = tippe::make_params(0.02, 0.02, 0.3, 1.5 * 3.2e-6, 3.2e-6, 9.82, 0.3);
  EXPECT_THROW(tippe::thresholds(p), std::domain_error);
  // lambda_thres grows without bound as gamma approaches 1 + alpha
  const double I3 = 3.2e-6;
  const auto near = tippe::thresholds(tippe::make_params(0.02, 0.02, 0.3, 1.2999999 * I3, I3, 9.82, 0.3));
  EXPECT_GT(near.lambda_thres, 1e3 * 3.4389e-6);
}

TEST(AsymptoticConstants, ReferenceLambda)
{
  const Params p = tippe::reference_params();
  const auto c = tippe::asymptotic_constants(6.8944e-6, p);
  EXPECT_NEAR(c.D0, 7.2388e-4, 5e-8);
  EXPECT_NEAR(c.D1, -6.024e-4, 5e-7);
  EXPECT_NEAR(c.Etilde0, 0.0406424, 5e-8);
  EXPECT_NEAR(c.Etilde1, 0.016093, 5e-7);
  EXPECT_NEAR(c.omega3_upright, 153.9, 0.05);
  EXPECT_NEAR(c.omega3_inverted, -82.866, 5e-3);
  EXPECT_NEAR(tippe::nutation_period_bound(6.8944e-6, c.D0, p), 0.17319, 5e-5);
}

TEST(AsymptoticConstants, ZeroLambda)
{
  const Params p = tippe::reference_params();
  const auto c = tippe::asymptotic_constants(0.0, p);
  const double mgR = p.m() * p.g() * p.R();
  EXPECT_EQ(c.D0, 0.0);
  EXPECT_EQ(c.D1, 0.0);
  EXPECT_EQ(c.L0, 0.0);
  EXPECT_EQ(c.L1, 0.0);
  EXPECT_NEAR(c.Etilde0, mgR * 0.7, 1e-16);
  EXPECT_NEAR(c.Etilde1, mgR * 1.3, 1e-16);
}

TEST(AsymptoticConstants, LevelsMatchThePotentialAtThePoles)
{
  // The asymptotic states are the end points of V(., D_i, lambda).
  const Params p = tippe::reference_params();
  const double lam = 6.8944e-6;
  const auto c = tippe::asymptotic_constants(lam, p);
  EXPECT_NEAR(tippe::effective_potential(1.0 - 1e-9, c.D0, lam, p), c.Etilde0, 1e-8);
  EXPECT_NEAR(tippe::effective_potential(-1.0 + 1e-9, c.D1, lam, p), c.Etilde1, 1e-8);
}

TEST(PotentialMinimum, NearBothPolesForNearbyRouthLevels)
{
  const Params p = tippe::reference_params();
  const double lam = 2.0 * tippe::thresholds(p).lambda_thres;
  const auto near_inv =
      tippe::potential_minimum(tippe::routh_near_inverted(lam, 1e-8, p), lam, p);
  EXPECT_GE(near_inv.z, -1.0);
  EXPECT_LE(near_inv.z, -0.9);
  const auto near_up = tippe::potential_minimum(tippe::routh_near_upright(lam, 1e-8, p), lam, p);
  EXPECT_GE(near_up.z, 0.9);
  EXPECT_LE(near_up.z, 1.0);
}

TEST(PotentialMinimum, FirstOrderCondition)
{
  const Params p = tippe::reference_params();
  const double lam = 6.8944e-6;
  for (double D : {-3e-4, 0.0, 2e-4, 5e-4})
  {
    const auto mn = tippe::potential_minimum(D, lam, p);
    ASSERT_FALSE(mn.at_boundary) << D;
    const Dual V =
        tippe::effective_potential_unchecked(Dual{mn.z, 1.0}, Dual{D}, Dual{lam}, p);
    EXPECT_NEAR(V.v, mn.V, 1e-15);
    EXPECT_LE(std::abs(V.d), 1e-6 * V.v) << D;
  }
}

TEST(PotentialMinimum, MonotoneBracketReportsBoundary)
{
  const Params p = tippe::reference_params();
  const auto mn = tippe::potential_minimum(0.0, 6.8944e-6, p, {0.0, 0.01});
  EXPECT_TRUE(mn.at_boundary);
  EXPECT_THROW(tippe::potential_minimum(0.0, 6.8944e-6, p, {-1.0, 0.5}), std::domain_error);
  EXPECT_THROW(tippe::potential_minimum(0.0, 6.8944e-6, p, {0.5, 0.4}), std::domain_error);
}

TEST(IntegratedForm, SecondOrderConvergence)
{
  const Params p = tippe::reference_params();
  const auto& tr = reference_run().trajectory;
  const auto a = tippe::integrated_form_residuals(tr, p, 2e-3);
  const auto b = tippe::integrated_form_residuals(tr, p, 1e-3);
  EXPECT_LT(a.max_lambda_rate, 1e-9);
  EXPECT_NEAR(a.rms_routh / b.rms_routh, 4.0, 1.0);
  EXPECT_NEAR(a.rms_etilde / b.rms_etilde, 4.0, 1.0);
  EXPECT_EQ(a.t.size(), a.routh_residual.size());
}

}  // namespace

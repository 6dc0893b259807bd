#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tippe/model.hpp"

namespace {

using tippe::Params;
using tippe::PhysicalConstants;
using tippe::State;

TEST(Params, ReferenceRatiosAreExactFractions)
{
  const Params p = tippe::reference_params();
  EXPECT_NEAR(p.gamma(), 131.0 / 140.0, 1e-15);
  EXPECT_NEAR(p.sigma(), 2.5, 1e-14);
  EXPECT_DOUBLE_EQ(p.m(), 0.02);
  EXPECT_DOUBLE_EQ(p.R(), 0.02);
  EXPECT_DOUBLE_EQ(p.alpha(), 0.3);
  EXPECT_DOUBLE_EQ(p.g(), 9.82);
  EXPECT_DOUBLE_EQ(p.mu(), 0.3);
  EXPECT_NEAR(p.I3(), 0.4 * 0.02 * 0.02 * 0.02, 1e-20);
  EXPECT_TRUE(p.inversion_window());
  EXPECT_TRUE(p.rational_window());
}

TEST(Params, RejectsInvalidConstants)
{
  const PhysicalConstants ok = tippe::reference_params().constants();
  auto bad = [&](auto mutate) {
    PhysicalConstants c = ok;
    mutate(c);
    return c;
  };
  EXPECT_THROW(Params(bad([](auto& c) { c.alpha = 0.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.alpha = 1.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.m = 0.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.R = -1.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.I1 = 0.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.I3 = 0.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.g = 0.0; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.mu = -0.1; })), std::invalid_argument);
  EXPECT_THROW(Params(bad([](auto& c) { c.mu = std::nan(""); })), std::invalid_argument);
  EXPECT_NO_THROW(Params(bad([](auto& c) { c.mu = 0.0; })));
}

TEST(Params, WithMuKeepsOtherConstants)
{
  const Params p = tippe::reference_params().with_mu(0.0);
  EXPECT_EQ(p.mu(), 0.0);
  EXPECT_EQ(p.gamma(), tippe::reference_params().gamma());
}

TEST(Params, WindowsOutsideReferenceTop)
{
  // gamma = 1.5 > 1 + alpha
  const Params p = tippe::make_params(0.02, 0.02, 0.3, 1.5 * 3.2e-6, 3.2e-6, 9.82, 0.3);
  EXPECT_FALSE(p.inversion_window());
  EXPECT_FALSE(p.rational_window());
}

TEST(Rationality, ReferenceTopSatisfiesAlternativeForm)
{
  const auto r = tippe::rationality_check(tippe::reference_params(), 1e-12);
  EXPECT_TRUE(r.alternative_holds);
  EXPECT_FALSE(r.printed_holds);
  EXPECT_NEAR(r.alternative_residual, 0.0, 1e-14);
  EXPECT_NEAR(r.printed_residual, 9.0 / 140.0 - 0.7, 1e-14);
  ASSERT_TRUE(r.alternative_sigma.has_value());
  EXPECT_NEAR(*r.alternative_sigma, 2.5, 1e-12);
  ASSERT_TRUE(r.printed_sigma.has_value());
  EXPECT_NEAR(*r.printed_sigma, 0.7 / (9.0 / 350.0), 1e-10);
}

TEST(Rationality, DegenerateDenominator)
{
  // gamma + alpha^2 = 1
  const auto r = tippe::rationality_check(0.3, 0.91, 2.5, 1e-12);
  EXPECT_TRUE(r.denominator_degenerate);
  EXPECT_FALSE(r.printed_sigma.has_value());
  EXPECT_FALSE(r.alternative_sigma.has_value());
}

TEST(State, ArrayRoundTripAndPsiDot)
{
  const State s{0.1, 0.2, 0.3, 155.0, 0.01, -0.02};
  const State back = tippe::from_array(tippe::to_array(s));
  EXPECT_EQ(back.theta, s.theta);
  EXPECT_EQ(back.nu_y, s.nu_y);
  EXPECT_DOUBLE_EQ(tippe::psi_dot(s), 155.0 - 0.3 * std::cos(0.1));
  EXPECT_TRUE(tippe::is_finite(s));
  State bad = s;
  bad.omega3 = INFINITY;
  EXPECT_FALSE(tippe::is_finite(bad));
}

TEST(VectorState, UprightSpinOnlyHasAxialMomentum)
{
  const Params p = tippe::reference_params();
  const State s{0.1, 0.0, 0.0, 155.0, 0.0, 0.0};
  const auto v = tippe::euler_to_vector(s, p, 0.0);
  EXPECT_NEAR(v.axis3.norm(), 1.0, 1e-15);
  EXPECT_NEAR(v.axis3.z(), std::cos(0.1), 1e-15);
  EXPECT_NEAR(v.L.dot(v.axis3), p.I3() * 155.0, 1e-18);
  EXPECT_EQ(v.vA.z(), 0.0);
}

TEST(VectorState, RoundTripOnRandomStates)
{
  const Params p = tippe::reference_params();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0.05, std::numbers::pi - 0.05);
  std::uniform_real_distribution<double> rate(-200.0, 200.0);
  std::uniform_real_distribution<double> small(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int k = 0; k < 500; ++k)
  {
    const State s{th(rng), small(rng) * 20.0, rate(rng), rate(rng), small(rng) * 0.1,
                  small(rng) * 0.1};
    const double phi = ang(rng);
    const auto pose = tippe::vector_to_euler(tippe::euler_to_vector(s, p, phi), p);
    const auto a = tippe::to_array(s);
    const auto b = tippe::to_array(pose.state);
    for (int i = 0; i < 6; ++i)
    {
      EXPECT_NEAR(b[i], a[i], 1e-12 * std::max(1.0, std::abs(a[i]))) << "component " << i;
    }
    EXPECT_NEAR(std::remainder(pose.phi - phi, 2.0 * std::numbers::pi), 0.0, 1e-12);
  }
}

TEST(VectorState, VerticalAxisIsSingular)
{
  const Params p = tippe::reference_params();
  tippe::VectorState v;
  v.axis3 = {0.0, 0.0, 1.0};
  v.L = {0.0, 0.0, 1e-5};
  v.vA = {0.0, 0.0, 0.0};
  EXPECT_THROW(tippe::vector_to_euler(v, p), tippe::PoleSingularity);
}

}  // namespace

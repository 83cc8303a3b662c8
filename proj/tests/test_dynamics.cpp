#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncwigner/dynamics.hpp"
#include "oracles.hpp"

using namespace ncwigner;

namespace {

constexpr double kPi = std::numbers::pi;

DerivedParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.3, 2.5), nc(0.0, 0.9);
  OscillatorConfig c;
  c.mass = pos(rng);
  c.omega = pos(rng);
  c.hbar = pos(rng);
  c.theta = nc(rng) * c.hbar;
  c.eta = nc(rng) * c.hbar;
  return derive_params(c);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST(Dynamics, InitialCondition) {
  const auto p = derive_params(config_from_beat_ratio(0.3));
  const InitialData in{0.4, -1.1, 2.0, 0.5};
  const auto x = evolve(p, in, 0.0);
  EXPECT_EQ(x.q1, in.x);
  EXPECT_EQ(x.q2, in.y);
  EXPECT_EQ(x.pi1, in.pi_x);
  EXPECT_EQ(x.pi2, in.pi_y);
}

TEST(Dynamics, CommutativeLimitIsUncoupled) {
  const auto p = derive_params({});
  const InitialData in{0.7, -0.2, 1.3, 0.4};
  for (double t : {0.3, 1.0, 5.5, -2.0}) {
    const auto x = evolve(p, in, t);
    EXPECT_NEAR(x.q1, in.x * std::cos(t) + in.pi_x * std::sin(t), 1e-14);
    EXPECT_NEAR(x.q2, in.y * std::cos(t) + in.pi_y * std::sin(t), 1e-14);
  }
}

TEST(Dynamics, PureGammaRotationAfterFullOmegaTurn) {
  const auto p = derive_params(config_from_beat_ratio(0.25));
  const InitialData in{0.8, -0.3, 0.6, 1.1};
  const double t = 2 * kPi / p.Omega;
  const auto x = evolve(p, in, t);
  EXPECT_NEAR(x.q1, in.y, 1e-12);
  EXPECT_NEAR(x.q2, -in.x, 1e-12);
  EXPECT_NEAR(x.pi1, in.pi_y, 1e-12);
  EXPECT_NEAR(x.pi2, -in.pi_x, 1e-12);

  // Independent check: RK4 on the first-order system.
  const auto y = oracle::rk4({p.alpha * p.alpha, p.beta * p.beta, p.gamma},
                             {in.x, in.y, in.pi_x, in.pi_y}, t, 1e-3);
  EXPECT_NEAR(x.q1, y[0], 1e-9);
  EXPECT_NEAR(x.q2, y[1], 1e-9);
  EXPECT_NEAR(x.pi1, y[2], 1e-9);
  EXPECT_NEAR(x.pi2, y[3], 1e-9);
}

TEST(Dynamics, AgreesWithRk4ForGeneralParameters) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_params(rng);
    const InitialData in{u(rng), u(rng), u(rng), u(rng)};
    const double t = 3.0;
    const auto x = evolve(p, in, t);
    const auto y = oracle::rk4({p.alpha * p.alpha, p.beta * p.beta, p.gamma},
                               {in.x, in.y, in.pi_x, in.pi_y}, t, 1e-4);
    EXPECT_NEAR(x.q1, y[0], 1e-9);
    EXPECT_NEAR(x.q2, y[1], 1e-9);
    EXPECT_NEAR(x.pi1, y[2], 1e-9);
    EXPECT_NEAR(x.pi2, y[3], 1e-9);
  }
}

TEST(Dynamics, InvariantsSpotValues) {
  const auto p = derive_params({});
  for (double t : {0.0, 0.9, 4.0}) {
    const auto inv = invariants(p, evolve(p, {1, 0, 0, 0}, t));
    EXPECT_NEAR(inv.xi2, 1.0, 1e-14);
    EXPECT_NEAR(inv.L, 0.0, 1e-14);
  }
  const InitialData in{1, 1, 1, -1};
  const auto q = derive_params(config_from_beat_ratio(0.2));
  for (double t : {0.0, 0.9, 4.0, 33.0}) {
    EXPECT_NEAR(invariants(p, evolve(p, in, t)).L, -2.0, 1e-13);
    EXPECT_NEAR(invariants(q, evolve(q, in, t)).L, -2.0, 1e-13);
  }
  // xi2 has no gamma dependence at t = 0.
  EXPECT_DOUBLE_EQ(invariants(p, evolve(p, in, 0)).xi2, invariants(q, evolve(q, in, 0)).xi2);
}

TEST(Dynamics, InvariantsConservedOnRandomCases) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0), tt(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(rng);
    const InitialData in{u(rng), u(rng), u(rng), u(rng)};
    const auto i0 = invariants(p, evolve(p, in, 0.0));
    const auto it = invariants(p, evolve(p, in, tt(rng)));
    ASSERT_LT(rel(it.xi2, i0.xi2), 1e-12);
    ASSERT_LT(std::abs(it.L - i0.L), 1e-12 * std::max(1.0, i0.xi2));
  }
}

TEST(Dynamics, EvolutionIsLinear) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto p = random_params(rng);
  const InitialData a{u(rng), u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng), u(rng)};
  const double s = 1.7;
  const InitialData c{a.x + s * b.x, a.y + s * b.y, a.pi_x + s * b.pi_x, a.pi_y + s * b.pi_y};
  for (double t : {0.4, 7.0}) {
    const auto xa = evolve(p, a, t), xb = evolve(p, b, t), xc = evolve(p, c, t);
    EXPECT_NEAR(xc.q1, xa.q1 + s * xb.q1, 1e-12);
    EXPECT_NEAR(xc.q2, xa.q2 + s * xb.q2, 1e-12);
    EXPECT_NEAR(xc.pi1, xa.pi1 + s * xb.pi1, 1e-12);
    EXPECT_NEAR(xc.pi2, xa.pi2 + s * xb.pi2, 1e-12);
  }
}

TEST(Dynamics, OdeResidualIsSecondOrder) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 5; ++i) {
    const auto p = i == 0 ? derive_params({}) : random_params(rng);
    const InitialData in{u(rng), u(rng), u(rng), u(rng)};
    for (double t : {0.0, 1.3}) {
      const double r3 = ode_residual(p, in, t, 1e-3);
      const double r2 = ode_residual(p, in, t, 1e-2);
      EXPECT_LT(r3, 1e-4);
      // ratio for h -> h/10 should be ~100
      EXPECT_GT(r2 / r3, 60.0);
      EXPECT_LT(r2 / r3, 140.0);
    }
  }
  EXPECT_THROW(ode_residual(derive_params({}), {}, 0.0, 0.0), NumericError);
}

TEST(Dynamics, OrbitClosure) {
  const auto quarter = derive_params(config_from_beat_ratio(0.25));
  const auto period = orbit_closure(quarter, 1e-9, 1000);
  ASSERT_TRUE(period.has_value());
  EXPECT_NEAR(*period, 8 * kPi / quarter.Omega, 1e-12);
  const InitialData in{0.9, 0.2, -0.4, 0.3};
  const auto back = evolve(quarter, in, *period);
  EXPECT_NEAR(back.q1, in.x, 1e-12);
  EXPECT_NEAR(back.q2, in.y, 1e-12);
  EXPECT_NEAR(back.pi1, in.pi_x, 1e-12);
  EXPECT_NEAR(back.pi2, in.pi_y, 1e-12);

  for (double e : {0.1, 0.01}) {
    const auto p = derive_params(config_from_beat_ratio(e));
    const auto t = orbit_closure(p, 1e-9, 1000);
    ASSERT_TRUE(t.has_value()) << e;
    const auto y = evolve(p, in, *t);
    EXPECT_NEAR(y.q1, in.x, 1e-9);
    EXPECT_NEAR(y.q2, in.y, 1e-9);
  }

  const auto irrational = derive_params(config_from_beat_ratio(1.0 / (2 * kPi)));
  EXPECT_FALSE(orbit_closure(irrational, 1e-6, 1000).has_value());

  const auto flat = derive_params({});
  EXPECT_NEAR(*orbit_closure(flat, 1e-9, 1000), 2 * kPi, 1e-14);
}

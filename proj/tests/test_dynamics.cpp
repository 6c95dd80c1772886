#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ringcc/dynamics.hpp"
#include "ringcc/libration.hpp"

using namespace ringcc;
using std::numbers::pi;

namespace {

// Central unit mass plus one massless body on a unit circular orbit.
SimState kepler_pair() {
  SimState s;
  s.pos = {{0.0, 0.0}, {1.0, 0.0}};
  s.vel = {{0.0, 0.0}, {0.0, 1.0}};
  s.mass = {1.0, 0.0};
  s.reference_radius = {0.0, 1.0};
  return s;
}

IntegratorConfig periods(Integrator method, double omega, double steps_per_period, double count,
                         std::int64_t record_every = 1) {
  const double period = 2.0 * pi / omega;
  return {method, period / steps_per_period, count * period, record_every};
}

double max_abs_x(const std::vector<RotatingSample>& run, double x0) {
  double worst = 0.0;
  for (const auto& r : run) worst = std::max(worst, std::abs(r.state.x - x0));
  return worst;
}

}  // namespace

TEST(InitCentralConfiguration, ZeroMomentumAndRigidVelocities) {
  const auto sys = normalized_system(7, 0.05);
  const auto s = init_central_configuration(sys);
  ASSERT_EQ(s.size(), 8u);
  const double w = omega_equilibrium(sys).omega;
  Vec2 p;
  for (std::size_t i = 0; i < s.size(); ++i) {
    p += s.mass[i] * s.vel[i];
    if (i > 0) {
      EXPECT_NEAR(s.vel[i].norm(), w, 1e-15);
      EXPECT_NEAR(s.pos[i].x * s.vel[i].x + s.pos[i].y * s.vel[i].y, 0.0, 1e-15);
    }
  }
  EXPECT_NEAR(p.x, 0.0, 1e-15);
  EXPECT_NEAR(p.y, 0.0, 1e-15);
  EXPECT_EQ(s.vel[0].x, 0.0);
  EXPECT_EQ(s.reference_radius[0], 0.0);
}

TEST(InitCentralConfiguration, MasslessRingIsKeplerian) {
  const auto s = init_central_configuration(normalized_system(3, 0.0));
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_NEAR(s.vel[i].norm(), 1.0, 1e-15);
}

TEST(InitCentralConfiguration, DoubleRingUsesCommonRate) {
  TwoRingSystem sys;
  sys.n_per_ring = 6;
  sys.inner_mass = 1e-4;
  sys.outer_mass = 2e-4;
  const auto s = init_central_configuration(sys);
  ASSERT_EQ(s.size(), 13u);
  const double w = common_omega(sys);
  Vec2 p;
  for (std::size_t i = 0; i < s.size(); ++i) {
    p += s.mass[i] * s.vel[i];
    if (i > 0) {
      EXPECT_NEAR(s.vel[i].norm(), w * s.reference_radius[i], 1e-15);
    }
  }
  EXPECT_NEAR(p.norm(), 0.0, 1e-15);
}

TEST(Integrate, RingStaysRigidOverOnePeriod) {
  for (const std::int64_t n : {20, 100}) {
    const auto sys = normalized_system(n, 1e-3);
    const double w = omega_equilibrium(sys).omega;
    const auto cfg = IntegratorConfig{Integrator::Rk4, default_step(w), 2.0 * pi / w, 256};
    double worst_radius = 0.0;
    double worst_spacing = 0.0;
    integrate_observed(init_central_configuration(sys), cfg, [&](const SimState& s, const Diagnostics& d) {
      worst_radius = std::max(worst_radius, d.max_radius_deviation);
      worst_spacing = std::max(worst_spacing, max_spacing_deviation(s, 1, static_cast<std::size_t>(n)));
    });
    EXPECT_LT(worst_radius, 1e-6) << n;
    EXPECT_LT(worst_spacing, 1e-6) << n;
  }
}

TEST(Integrate, KeplerRadiusAtEveryPeriod) {
  const auto traj = integrate(kepler_pair(), periods(Integrator::Leapfrog, 1.0, 8192, 10, 8192));
  ASSERT_EQ(traj.diagnostics.size(), 11u);
  for (const auto& d : traj.diagnostics) EXPECT_LT(d.max_radius_deviation, 1e-8) << d.time;
}

TEST(Integrate, LeapfrogRadiusExcursionWithinAnOrbit) {
  // The leapfrog orbit is a slightly eccentric ellipse; its radius swings by
  // (h Omega)^2 / 2 relative and returns once per period.
  const double h = 2.0 * pi / 8192.0;
  const auto traj = integrate(kepler_pair(), periods(Integrator::Leapfrog, 1.0, 8192, 1));
  double worst = 0.0;
  for (const auto& d : traj.diagnostics) worst = std::max(worst, d.max_radius_deviation);
  EXPECT_NEAR(worst, 0.5 * h * h, 0.05 * 0.5 * h * h);
}

TEST(Integrate, LeapfrogConservesEnergyAndAngularMomentum) {
  const auto sys = normalized_system(20, 1e-3);
  const double w = omega_equilibrium(sys).omega;
  const auto traj = integrate(init_central_configuration(sys), periods(Integrator::Leapfrog, w, 4096, 3, 4096));
  ASSERT_EQ(traj.diagnostics.size(), 4u);
  for (std::size_t k = 1; k < traj.diagnostics.size(); ++k) {
    const auto& a = traj.diagnostics[k - 1];
    const auto& b = traj.diagnostics[k];
    EXPECT_LT(std::abs(b.energy / a.energy - 1.0), 1e-8);
    EXPECT_LT(std::abs(b.ang_momentum / a.ang_momentum - 1.0), 1e-10);
  }
}

TEST(Integrate, Rk4IsFourthOrder) {
  auto error = [](double steps) {
    const auto end = integrate(kepler_pair(), periods(Integrator::Rk4, 1.0, steps, 1, 1 << 20)).frames.back();
    return (end.pos[1] - Vec2{1.0, 0.0}).norm();
  };
  const double coarse = error(128);
  const double fine = error(256);
  EXPECT_GE(std::log2(coarse / fine), 3.9);
}

TEST(Integrate, DeterministicRuns) {
  const auto sys = normalized_system(9, 1e-2);
  const auto cfg = periods(Integrator::Rk4, omega_equilibrium(sys).omega, 512, 1, 64);
  const auto a = integrate(init_central_configuration(sys), cfg);
  const auto b = integrate(init_central_configuration(sys), cfg);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t k = 0; k < a.frames.size(); ++k)
    for (std::size_t i = 0; i < a.frames[k].size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(a.frames[k].pos[i].x), std::bit_cast<std::uint64_t>(b.frames[k].pos[i].x));
      EXPECT_EQ(std::bit_cast<std::uint64_t>(a.frames[k].vel[i].y), std::bit_cast<std::uint64_t>(b.frames[k].vel[i].y));
    }
}

TEST(Integrate, RecordsFirstAndLastStates) {
  const auto traj = integrate(kepler_pair(), {Integrator::Rk4, 0.1, 1.04, 4});
  ASSERT_EQ(traj.frames.size(), 4u);  // t = 0, 0.4, 0.8, 1.0
  EXPECT_EQ(traj.frames.front().time, 0.0);
  EXPECT_NEAR(traj.frames.back().time, 1.0, 1e-15);
}

TEST(Integrate, CoincidenceAborts) {
  SimState s;
  s.pos = {{0.0, 0.0}, {1.0, 0.0}};
  s.vel = {{0.0, 0.0}, {-1.0, 0.0}};
  s.mass = {1.0, 1.0};
  s.reference_radius = {0.0, 0.0};
  s.pos[1] = {0.0, 0.0};
  EXPECT_THROW(integrate(s, {Integrator::Leapfrog, 0.01, 1.0, 1}), CoincidenceError);
}

TEST(Integrate, RejectsBadInput) {
  auto s = kepler_pair();
  EXPECT_THROW(integrate(s, {Integrator::Rk4, 0.0, 1.0, 1}), std::invalid_argument);
  EXPECT_THROW(integrate(s, {Integrator::Rk4, 0.1, 0.01, 1}), std::invalid_argument);
  EXPECT_THROW(integrate(s, {Integrator::Rk4, 0.1, 1.0, 0}), std::invalid_argument);
  s.mass.pop_back();
  EXPECT_THROW(integrate(s, {Integrator::Rk4, 0.1, 1.0, 1}), std::invalid_argument);
  s = kepler_pair();
  s.vel[1].x = std::nan("");
  EXPECT_THROW(integrate(s, {Integrator::Rk4, 0.1, 1.0, 1}), std::invalid_argument);
}

TEST(Rotating, MidArcIsAFixedPointOfTheStationaryFrame) {
  const auto sys = normalized_system(20, 1e-3);
  const double phi = pi / 20.0;
  const double w = stationary_frame_omega(sys, phi);
  const auto run = integrate_rotating_test_particle(sys, {0.0, phi, 0.0, 0.0},
                                                    periods(Integrator::Rk4, w, 4096, 1, 16), {w});
  EXPECT_LT(max_abs_x(run, 0.0), 1e-9);
  for (const auto& r : run) EXPECT_NEAR(r.state.phi, phi, 1e-9);
}

TEST(Rotating, CollinearLibrationPointHolds) {
  const auto sys = normalized_system(50, 1e-3);
  const double x_l = solve_full(sys, LibrationBranch::Inner)->x_over_r;
  const double w = omega_equilibrium(sys).omega;
  const auto run = integrate_rotating_test_particle(sys, {x_l, 0.0, 0.0, 0.0}, periods(Integrator::Rk4, w, 40960, 0.1));
  EXPECT_LT(max_abs_x(run, x_l), 1e-4);
}

TEST(Rotating, SmallOscillationFrequency) {
  const std::int64_t n = 20;
  const auto sys = normalized_system(n, 1e-6 * static_cast<double>(n));
  const double phi = pi / static_cast<double>(n);
  const double w = stationary_frame_omega(sys, phi);
  const double x0 = 1e-4;
  const TestParticleState start{x0, phi, 0.0, w * (1.0 / ((1.0 + x0) * (1.0 + x0)) - 1.0)};
  const auto run = integrate_rotating_test_particle(sys, start, periods(Integrator::Rk4, w, 2048, 12, 2), {w});
  std::vector<double> t;
  std::vector<double> x;
  for (const auto& r : run) {
    t.push_back(r.time);
    x.push_back(r.state.x);
  }
  const auto est = measure_frequency(t, x);
  const double predicted = epicyclic_omega(sys, w, phi, true);
  EXPECT_LT(std::abs(est.omega / predicted - 1.0), 0.01);
  EXPECT_GE(est.crossings, kMinCrossings);
}

TEST(Rotating, AngularMomentumOnTheSymmetryRay) {
  const auto sys = normalized_system(20, 1e-3);
  const double w = omega_equilibrium(sys).omega;
  const double x_l = solve_full(sys, LibrationBranch::Inner)->x_over_r;
  const TestParticleState start{x_l, 0.0, 0.0, 0.0};
  const auto run = integrate_rotating_test_particle(sys, start, periods(Integrator::Rk4, w, 4096, 1, 64));
  const double l0 = start.angular_momentum(1.0, w);
  for (const auto& r : run) {
    EXPECT_LT(std::abs(r.state.phi), 1e-15) << r.time;
    EXPECT_LT(std::abs(r.state.angular_momentum(1.0, w) / l0 - 1.0), 1e-10) << r.time;
  }
}

TEST(Rotating, JacobiIntegralConserved) {
  const auto sys = normalized_system(12, 1e-3);
  const double w = omega_equilibrium(sys).omega;
  const TestParticleState start{0.03, 0.1, 0.0, 0.0};
  const auto run = integrate_rotating_test_particle(sys, start, periods(Integrator::Rk4, w, 4096, 1, 128));
  const double c0 = jacobi_integral(sys, start, w);
  for (const auto& r : run) EXPECT_NEAR(jacobi_integral(sys, r.state, w), c0, 1e-11 * std::abs(c0));
}

TEST(Rotating, MatchesInertialIntegration) {
  for (const std::int64_t n : {20, 100}) {
    const auto sys = normalized_system(n, 1e-3);
    const double w = omega_equilibrium(sys).omega;
    const TestParticleState start{0.02, 0.3 * pi / static_cast<double>(n), 1e-3, -2e-3};
    const auto cfg = periods(Integrator::Rk4, w, 4096, 1, 64);
    const auto rot = integrate_rotating_test_particle(sys, start, cfg);
    const auto inert = integrate_inertial_test_particle(sys, start, cfg);
    ASSERT_EQ(rot.size(), inert.size());
    for (std::size_t k = 0; k < rot.size(); ++k) {
      EXPECT_NEAR(rot[k].time, inert[k].time, 1e-15);
      EXPECT_LT((to_inertial(sys, rot[k], w) - inert[k].pos).norm(), 1e-6) << n;
    }
  }
}

TEST(Rotating, RejectsLeapfrogAndCatchesCollisions) {
  const auto sys = normalized_system(10, 1e-3);
  EXPECT_THROW(integrate_rotating_test_particle(sys, {0.01, 0.0, 0.0, 0.0}, {Integrator::Leapfrog, 0.01, 1.0, 1}),
               std::invalid_argument);
  EXPECT_THROW(integrate_rotating_test_particle(sys, {0.0, 0.0, 0.0, 0.0}, {Integrator::Rk4, 0.01, 1.0, 1}),
               CoincidenceError);
}

TEST(MeasureFrequency, PureSine) {
  std::vector<double> t;
  std::vector<double> x;
  for (int i = 0; i <= 10000; ++i) {
    t.push_back(0.01 * i);
    x.push_back(std::sin(2.0 * pi * t.back() / 5.0));
  }
  const auto e = measure_frequency(t, x);
  EXPECT_NEAR(e.omega, 2.0 * pi / 5.0, 1e-4);
  EXPECT_LT(e.std_error, 1e-4);
}

TEST(MeasureFrequency, DampedSine) {
  std::vector<double> t;
  std::vector<double> x;
  for (int i = 0; i <= 10000; ++i) {
    t.push_back(0.01 * i);
    x.push_back(std::exp(-0.01 * t.back()) * std::sin(t.back()));
  }
  EXPECT_NEAR(measure_frequency(t, x).omega, 1.0, 1e-3);
}

TEST(MeasureFrequency, TooFewCrossings) {
  std::vector<double> t;
  std::vector<double> x;
  for (int i = 0; i <= 1000; ++i) {
    t.push_back(0.01 * i);
    x.push_back(std::sin(t.back()));
  }
  EXPECT_THROW(measure_frequency(t, x), InsufficientDataError);
  x.pop_back();
  EXPECT_THROW(measure_frequency(t, x), std::invalid_argument);
}

TEST(OscillationDemo, UndampedKeepsAmplitude) {
  const auto d = oscillation_demo(1.3, 0.0, 0.0, 10.0, 2001);
  const auto half = d.stationary.size() / 2;
  const double early = std::abs(*std::max_element(d.stationary.begin(), d.stationary.begin() + half,
                                                  [](double a, double b) { return std::abs(a) < std::abs(b); }));
  const double late = std::abs(*std::max_element(d.stationary.begin() + half, d.stationary.end(),
                                                 [](double a, double b) { return std::abs(a) < std::abs(b); }));
  EXPECT_GE(late, 0.99 * early);
  EXPECT_EQ(d.stationary, d.damped);
  EXPECT_EQ(d.stationary.front(), 1.0);
}

TEST(OscillationDemo, OverdampedNeverCrosses) {
  const auto d = oscillation_demo(1.0, 1.5, 0.0, 10.0, 2001);
  for (const double v : d.damped) EXPECT_GT(v, 0.0);
}

TEST(OscillationDemo, LightDampingEnvelope) {
  const double omega = 2.0;
  const double k = 0.02;
  const auto d = oscillation_demo(omega, k, 0.0, 20.0, 20001);
  const double period = 2.0 * pi / omega;
  // Peaks of the damped series against e^{-k t}.
  for (std::size_t i = 1; i + 1 < d.damped.size(); ++i) {
    if (d.damped[i] > d.damped[i - 1] && d.damped[i] >= d.damped[i + 1] && d.damped[i] > 0.0) {
      const double t = d.t_over_period[i] * period;
      EXPECT_NEAR(d.damped[i] / std::exp(-k * t), 1.0, 0.05) << t;
    }
  }
}

TEST(OscillationDemo, CriticalDampingClosedForm) {
  EXPECT_NEAR(detail::damped_unit_response(1.0, 1.0, 2.0), std::exp(-2.0) * 3.0, 1e-15);
  EXPECT_NEAR(detail::damped_unit_response(4.0, 0.0, pi / 2.0), -1.0, 1e-15);
}

TEST(OscillationDemo, RingOverloadUsesEpicyclicFrequency) {
  const auto sys = normalized_system(10, 1e-3);
  const double w = omega_equilibrium(sys).omega;
  const auto a = oscillation_demo(sys, 0.1);
  const auto b = oscillation_demo(epicyclic_omega(sys, w), 0.1);
  EXPECT_EQ(a.damped, b.damped);
  EXPECT_THROW(oscillation_demo(1.0, -0.1), std::invalid_argument);
}

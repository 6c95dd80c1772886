#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringcc/compensated_sum.hpp"
#include "ringcc/equilibrium.hpp"
#include "ringcc/errors.hpp"
#include "ringcc/ring_model.hpp"
#include "ringcc/two_ring.hpp"

namespace ringcc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

/// Inertial planar state of every body. reference_radius is the radius a
/// body should keep under rigid rotation (zero for the central body and for
/// bodies that are not tracked).
struct SimState {
  double time = 0.0;
  std::vector<Vec2> pos;
  std::vector<Vec2> vel;
  std::vector<double> mass;
  std::vector<double> reference_radius;
  double grav_constant = 1.0;

  [[nodiscard]] std::size_t size() const { return pos.size(); }
};

inline void validate(const SimState& s) {
  const auto n = s.pos.size();
  if (s.vel.size() != n || s.mass.size() != n || s.reference_radius.size() != n)
    throw std::invalid_argument("SimState arrays differ in length");
  if (n == 0) throw std::invalid_argument("SimState has no bodies");
  if (!(s.grav_constant > 0.0)) throw std::invalid_argument("SimState: G must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.pos[i].x) || !std::isfinite(s.pos[i].y) || !std::isfinite(s.vel[i].x) ||
        !std::isfinite(s.vel[i].y) || !(s.mass[i] >= 0.0) || !std::isfinite(s.mass[i]))
      throw std::invalid_argument("SimState has non-finite entries or negative mass");
  }
}

enum class Integrator { Rk4, Leapfrog };

inline std::string_view to_string(Integrator m) { return m == Integrator::Rk4 ? "rk4" : "leapfrog"; }

struct IntegratorConfig {
  Integrator method = Integrator::Rk4;
  double step = 0.0;
  double duration = 0.0;
  std::int64_t record_every = 1;
};

inline void validate(const IntegratorConfig& c) {
  if (!(c.step > 0.0) || !std::isfinite(c.step)) throw std::invalid_argument("integrator step must be positive");
  if (!(c.duration >= c.step) || !std::isfinite(c.duration))
    throw std::invalid_argument("integrator duration must be at least one step");
  if (c.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

/// Number of fixed steps covering the configured duration.
inline std::int64_t step_count(const IntegratorConfig& c) {
  return std::max<std::int64_t>(1, std::llround(c.duration / c.step));
}

/// Default step: the rotation period over 4096.
inline double default_step(double omega) { return 2.0 * std::numbers::pi / omega / 4096.0; }

struct Diagnostics {
  double time = 0.0;
  double energy = 0.0;
  double ang_momentum = 0.0;
  double max_radius_deviation = 0.0;
};

inline Diagnostics diagnose(const SimState& s) {
  CompensatedSum<> kinetic;
  CompensatedSum<> potential_energy;
  CompensatedSum<> lz;
  double dev = 0.0;
  const auto n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = s.vel[i];
    kinetic += 0.5 * s.mass[i] * (v.x * v.x + v.y * v.y);
    lz += s.mass[i] * (s.pos[i].x * v.y - s.pos[i].y * v.x);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.mass[i] == 0.0 || s.mass[j] == 0.0) continue;
      potential_energy += -s.grav_constant * s.mass[i] * s.mass[j] / (s.pos[i] - s.pos[j]).norm();
    }
    if (s.reference_radius[i] > 0.0)
      dev = std::max(dev, std::abs(s.pos[i].norm() - s.reference_radius[i]) / s.reference_radius[i]);
  }
  return {s.time, kinetic.value() + potential_energy.value(), lz.value(), dev};
}

namespace detail {

inline double length_scale(const SimState& s) {
  double scale = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) scale = std::max({scale, s.reference_radius[i], s.pos[i].norm()});
  return scale > 0.0 ? scale : 1.0;
}

/// Pairwise Newtonian accelerations, pairs visited in a fixed order.
inline void accelerations(const std::vector<Vec2>& pos, const std::vector<double>& mass, double g, double guard,
                          std::vector<Vec2>& out) {
  const auto n = pos.size();
  out.assign(n, Vec2{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mass[i] == 0.0 && mass[j] == 0.0) continue;
      const Vec2 d = pos[j] - pos[i];
      const double r_sq = d.x * d.x + d.y * d.y;
      if (r_sq < guard * guard)
        throw CoincidenceError("bodies " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      const double inv_r3 = 1.0 / (r_sq * std::sqrt(r_sq));
      out[i] += (g * mass[j] * inv_r3) * d;
      out[j] -= (g * mass[i] * inv_r3) * d;
    }
  }
}

inline void require_finite(const SimState& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s.pos[i].x) || !std::isfinite(s.pos[i].y) || !std::isfinite(s.vel[i].x) ||
        !std::isfinite(s.vel[i].y))
      throw IntegrationError("non-finite state at t = " + std::to_string(s.time));
  }
}

}  // namespace detail

/// Bodies on the polygon with tangential velocity Omega R, central body at
/// rest at the origin (body 0).
inline SimState init_central_configuration(const RingSystem& sys) {
  validate(sys);
  const double omega = omega_equilibrium(sys).omega;
  SimState s;
  s.grav_constant = sys.grav_constant;
  s.pos.push_back({0.0, 0.0});
  s.vel.push_back({0.0, 0.0});
  s.mass.push_back(sys.central_mass);
  s.reference_radius.push_back(0.0);
  for (std::int64_t j = 0; j < sys.n_particles; ++j) {
    const double theta = detail::polygon_angle(j, sys.n_particles);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    s.pos.push_back({sys.radius * c, sys.radius * sn});
    s.vel.push_back({-omega * sys.radius * sn, omega * sys.radius * c});
    s.mass.push_back(sys.particle_mass);
    s.reference_radius.push_back(sys.radius);
  }
  return s;
}

/// Both rings rotate at the common rate chosen by the system's Omega policy.
inline SimState init_central_configuration(const TwoRingSystem& sys) {
  const auto bodies = build_two_ring(sys);
  const double omega = common_omega(sys);
  SimState s;
  s.grav_constant = sys.grav_constant;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const auto& b = bodies[i];
    s.pos.push_back({b.x, b.y});
    s.vel.push_back({-omega * b.y, omega * b.x});
    s.mass.push_back(b.mass);
    s.reference_radius.push_back(i == 0 ? 0.0 : std::hypot(b.x, b.y));
  }
  return s;
}

using StepObserver = std::function<void(const SimState&, const Diagnostics&)>;

/// Fixed-step integration reporting the initial state, every record_every-th
/// step and the final state to the observer. Returns the final state.
inline SimState integrate_observed(SimState state, const IntegratorConfig& config, const StepObserver& observe) {
  validate(state);
  validate(config);
  const auto n = state.size();
  const double h = config.step;
  const double g = state.grav_constant;
  const double guard = kSeparationGuard * detail::length_scale(state);
  const double t0 = state.time;
  const auto steps = step_count(config);

  if (observe) observe(state, diagnose(state));

  std::vector<Vec2> acc;
  detail::accelerations(state.pos, state.mass, g, guard, acc);

  std::vector<Vec2> p2(n), v2(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n), tmp;
  for (std::int64_t step = 1; step <= steps; ++step) {
    if (config.method == Integrator::Leapfrog) {
      for (std::size_t i = 0; i < n; ++i) state.vel[i] += (0.5 * h) * acc[i];
      for (std::size_t i = 0; i < n; ++i) state.pos[i] += h * state.vel[i];
      detail::accelerations(state.pos, state.mass, g, guard, acc);
      for (std::size_t i = 0; i < n; ++i) state.vel[i] += (0.5 * h) * acc[i];
    } else {
      // k1 = (vel, acc)
      k1v = acc;
      for (std::size_t i = 0; i < n; ++i) p2[i] = state.pos[i] + (0.5 * h) * state.vel[i];
      for (std::size_t i = 0; i < n; ++i) k2x[i] = state.vel[i] + (0.5 * h) * k1v[i];
      detail::accelerations(p2, state.mass, g, guard, k2v);
      for (std::size_t i = 0; i < n; ++i) p2[i] = state.pos[i] + (0.5 * h) * k2x[i];
      for (std::size_t i = 0; i < n; ++i) k3x[i] = state.vel[i] + (0.5 * h) * k2v[i];
      detail::accelerations(p2, state.mass, g, guard, k3v);
      for (std::size_t i = 0; i < n; ++i) p2[i] = state.pos[i] + h * k3x[i];
      for (std::size_t i = 0; i < n; ++i) k4x[i] = state.vel[i] + h * k3v[i];
      detail::accelerations(p2, state.mass, g, guard, k4v);
      for (std::size_t i = 0; i < n; ++i) {
        state.pos[i] += (h / 6.0) * (state.vel[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
        state.vel[i] += (h / 6.0) * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
      }
      detail::accelerations(state.pos, state.mass, g, guard, acc);
    }
    state.time = t0 + static_cast<double>(step) * h;
    detail::require_finite(state);
    if (observe && (step % config.record_every == 0 || step == steps)) observe(state, diagnose(state));
  }
  return state;
}

struct Trajectory {
  std::vector<SimState> frames;
  std::vector<Diagnostics> diagnostics;
};

inline Trajectory integrate(const SimState& state, const IntegratorConfig& config) {
  Trajectory out;
  integrate_observed(state, config, [&](const SimState& s, const Diagnostics& d) {
    out.frames.push_back(s);
    out.diagnostics.push_back(d);
  });
  return out;
}

/// Largest deviation of the angular gaps between consecutive ring bodies
/// (indices first .. first + count - 1) from 2 pi / count.
inline double max_spacing_deviation(const SimState& s, std::size_t first, std::size_t count) {
  if (count < 2 || first + count > s.size()) throw std::invalid_argument("max_spacing_deviation: bad body range");
  const double ideal = 2.0 * std::numbers::pi / static_cast<double>(count);
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& a = s.pos[first + k];
    const auto& b = s.pos[first + (k + 1) % count];
    const double gap = std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
    worst = std::max(worst, std::abs(gap - ideal));
  }
  return worst;
}

// Rotating-frame test particle ---------------------------------------------

/// Frame rate at which a particle at rest at (x = 0, phi) feels no net
/// radial acceleration.
inline double stationary_frame_omega(const RingSystem& s, double phi) {
  validate(s);
  const double pull = central_force(s, 0.0) + ring_force(s, 0.0, phi, true).radial;
  if (!(pull < 0.0)) throw ImaginaryFrequencyError("stationary_frame_omega: net outward pull", -pull / s.radius);
  return std::sqrt(-pull / s.radius);
}

struct RotatingOptions {
  std::optional<double> frame_omega;  // defaults to the rigid rate of the ring
};

struct RotatingSample {
  double time = 0.0;
  TestParticleState state;
};

namespace detail {

struct PolarRates {
  double x_dot, phi_dot, x_ddot, phi_ddot;
};

inline PolarRates rotating_rates(const RingSystem& s, double omega, const TestParticleState& p) {
  const double r = s.radius + p.x;
  if (!(r > kSeparationGuard * s.radius)) throw CoincidenceError("test particle reached the centre");
  const auto f = ring_force(s, p.x, p.phi, true);
  const double w = p.phi_dot + omega;
  const double radial = f.radial + central_force(s, p.x);
  return {p.x_dot, p.phi_dot, r * w * w + radial, (f.tangential - 2.0 * p.x_dot * w) / r};
}

inline TestParticleState advance(const TestParticleState& p, const PolarRates& k, double h) {
  return {p.x + h * k.x_dot, p.phi + h * k.phi_dot, p.x_dot + h * k.x_ddot, p.phi_dot + h * k.phi_ddot};
}

}  // namespace detail

/// Integrates the polar equations of motion of a test particle in the frame
/// rotating with the frozen ring,
///   x'' - (R + x)(phi' + Omega)^2 = F_r,   d/dt[(R + x)^2 (phi' + Omega)] = (R + x) F_t,
/// with all N ring particles and the central mass acting. RK4 only.
using RotatingObserver = std::function<void(const RotatingSample&)>;

/// Frame rate used by the rotating-frame integrators.
inline double frame_omega(const RingSystem& s, const RotatingOptions& opts) {
  return opts.frame_omega ? *opts.frame_omega : omega_equilibrium(s).omega;
}

inline TestParticleState integrate_rotating_observed(const RingSystem& s, const TestParticleState& initial,
                                                     const IntegratorConfig& config, const RotatingOptions& opts,
                                                     const RotatingObserver& observe) {
  validate(s);
  validate(config);
  if (config.method != Integrator::Rk4)
    throw std::invalid_argument("rotating-frame integration supports rk4 only");
  const double omega = frame_omega(s, opts);
  const double h = config.step;
  const auto steps = step_count(config);

  TestParticleState p = initial;
  if (observe) observe({0.0, p});
  for (std::int64_t step = 1; step <= steps; ++step) {
    const auto k1 = detail::rotating_rates(s, omega, p);
    const auto k2 = detail::rotating_rates(s, omega, detail::advance(p, k1, 0.5 * h));
    const auto k3 = detail::rotating_rates(s, omega, detail::advance(p, k2, 0.5 * h));
    const auto k4 = detail::rotating_rates(s, omega, detail::advance(p, k3, h));
    p.x += h / 6.0 * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot);
    p.phi += h / 6.0 * (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot);
    p.x_dot += h / 6.0 * (k1.x_ddot + 2.0 * k2.x_ddot + 2.0 * k3.x_ddot + k4.x_ddot);
    p.phi_dot += h / 6.0 * (k1.phi_ddot + 2.0 * k2.phi_ddot + 2.0 * k3.phi_ddot + k4.phi_ddot);
    if (!std::isfinite(p.x) || !std::isfinite(p.phi) || !std::isfinite(p.x_dot) || !std::isfinite(p.phi_dot))
      throw IntegrationError("rotating-frame integration produced a non-finite state");
    if (observe && (step % config.record_every == 0 || step == steps)) observe({static_cast<double>(step) * h, p});
  }
  return p;
}

inline std::vector<RotatingSample> integrate_rotating_test_particle(const RingSystem& s,
                                                                    const TestParticleState& initial,
                                                                    const IntegratorConfig& config,
                                                                    const RotatingOptions& opts = {}) {
  std::vector<RotatingSample> out;
  integrate_rotating_observed(s, initial, config, opts, [&](const RotatingSample& r) { out.push_back(r); });
  return out;
}

/// Jacobi integral of a rotating-frame state,
/// (x'^2 + r^2 phi'^2) / 2 - Omega^2 r^2 / 2 - U.
inline double jacobi_integral(const RingSystem& s, const TestParticleState& p, double omega) {
  const double r = s.radius + p.x;
  return 0.5 * (p.x_dot * p.x_dot + r * r * p.phi_dot * p.phi_dot) - 0.5 * omega * omega * r * r -
         potential(s, to_planar(s, p.x, p.phi));
}

struct InertialSample {
  double time = 0.0;
  Vec2 pos;
  Vec2 vel;
};

/// Same test particle integrated in Cartesian inertial coordinates while the
/// ring particles move on prescribed circles at the frame rate. At t = 0 the
/// two frames coincide.
inline std::vector<InertialSample> integrate_inertial_test_particle(const RingSystem& s,
                                                                    const TestParticleState& initial,
                                                                    const IntegratorConfig& config,
                                                                    const RotatingOptions& opts = {}) {
  validate(s);
  validate(config);
  const double omega = frame_omega(s, opts);
  const double h = config.step;
  const auto steps = step_count(config);
  const double gm = s.grav_constant * s.particle_mass;
  const double g_central = s.grav_constant * s.central_mass;
  const double guard = kSeparationGuard * s.radius;

  auto accel = [&](double t, Vec2 q) {
    CompensatedSum<> ax;
    CompensatedSum<> ay;
    const double r_sq = q.x * q.x + q.y * q.y;
    if (r_sq < guard * guard) throw CoincidenceError("test particle reached the centre");
    const double inv_r3 = 1.0 / (r_sq * std::sqrt(r_sq));
    ax += -g_central * q.x * inv_r3;
    ay += -g_central * q.y * inv_r3;
    for (std::int64_t j = 0; j < s.n_particles; ++j) {
      const double theta = detail::polygon_angle(j, s.n_particles) + omega * t;
      const Vec2 d{s.radius * std::cos(theta) - q.x, s.radius * std::sin(theta) - q.y};
      const double d_sq = d.x * d.x + d.y * d.y;
      if (d_sq < guard * guard) throw CoincidenceError("test particle hit a ring particle");
      const double inv_d3 = 1.0 / (d_sq * std::sqrt(d_sq));
      ax += gm * d.x * inv_d3;
      ay += gm * d.y * inv_d3;
    }
    return Vec2{ax.value(), ay.value()};
  };

  const double r0 = s.radius + initial.x;
  const double c = std::cos(initial.phi);
  const double sn = std::sin(initial.phi);
  const double v_t = r0 * (initial.phi_dot + omega);
  Vec2 q{r0 * c, r0 * sn};
  Vec2 v{initial.x_dot * c - v_t * sn, initial.x_dot * sn + v_t * c};

  std::vector<InertialSample> out;
  out.push_back({0.0, q, v});
  for (std::int64_t step = 1; step <= steps; ++step) {
    const double t = static_cast<double>(step - 1) * h;
    const Vec2 a1 = accel(t, q);
    const Vec2 q2 = q + (0.5 * h) * v;
    const Vec2 v2 = v + (0.5 * h) * a1;
    const Vec2 a2 = accel(t + 0.5 * h, q2);
    const Vec2 q3 = q + (0.5 * h) * v2;
    const Vec2 v3 = v + (0.5 * h) * a2;
    const Vec2 a3 = accel(t + 0.5 * h, q3);
    const Vec2 q4 = q + h * v3;
    const Vec2 v4 = v + h * a3;
    const Vec2 a4 = accel(t + h, q4);
    q += (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4);
    v += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw IntegrationError("inertial test particle diverged");
    if (step % config.record_every == 0 || step == steps) out.push_back({static_cast<double>(step) * h, q, v});
  }
  return out;
}

/// Inertial Cartesian position of a rotating-frame sample.
inline Vec2 to_inertial(const RingSystem& s, const RotatingSample& sample, double frame_omega) {
  const double r = s.radius + sample.state.x;
  const double theta = sample.state.phi + frame_omega * sample.time;
  return {r * std::cos(theta), r * std::sin(theta)};
}

// Frequency measurement ----------------------------------------------------

struct FrequencyEstimate {
  double omega = 0.0;      // angular frequency
  double std_error = 0.0;  // standard error of omega from the regression
  std::size_t crossings = 0;
};

inline constexpr std::size_t kMinCrossings = 10;

/// Angular frequency of a sampled oscillation: the times at which x - mean(x)
/// changes sign (linearly interpolated) are regressed against their index;
/// consecutive crossings are half a period apart.
inline FrequencyEstimate measure_frequency(std::span<const double> t, std::span<const double> x) {
  if (t.size() != x.size()) throw std::invalid_argument("measure_frequency: series lengths differ");
  if (t.size() < 3) throw InsufficientDataError("measure_frequency: series too short");
  CompensatedSum<> total;
  for (const double v : x) total += v;
  const double mean = total.value() / static_cast<double>(x.size());

  std::vector<double> times;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = x[i - 1] - mean;
    const double b = x[i] - mean;
    if (a == 0.0 && i > 1 && (x[i - 2] - mean) * b < 0.0) {
      times.push_back(t[i - 1]);
    } else if (a * b < 0.0) {
      times.push_back(t[i - 1] + (t[i] - t[i - 1]) * a / (a - b));
    }
  }
  if (times.size() < kMinCrossings)
    throw InsufficientDataError("measure_frequency: only " + std::to_string(times.size()) + " zero crossings");

  const auto n = static_cast<double>(times.size());
  const double k_mean = (n - 1.0) / 2.0;
  CompensatedSum<> t_sum;
  for (const double v : times) t_sum += v;
  const double t_mean = t_sum.value() / n;
  CompensatedSum<> sxy;
  CompensatedSum<> sxx;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dk = static_cast<double>(k) - k_mean;
    sxy += dk * (times[k] - t_mean);
    sxx += dk * dk;
  }
  const double slope = sxy.value() / sxx.value();  // half period
  CompensatedSum<> ssr;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double fit = t_mean + slope * (static_cast<double>(k) - k_mean);
    ssr += (times[k] - fit) * (times[k] - fit);
  }
  const double slope_se = times.size() > 2 ? std::sqrt(ssr.value() / (n - 2.0) / sxx.value()) : 0.0;

  FrequencyEstimate e;
  e.omega = std::numbers::pi / slope;
  e.std_error = std::numbers::pi / (slope * slope) * slope_se;
  e.crossings = times.size();
  return e;
}

// Linear oscillator demo ---------------------------------------------------

struct DemoSeries {
  std::vector<double> t_over_period;
  std::vector<double> stationary;  // x / x0 with k = 0
  std::vector<double> damped;      // x / x0 with the given k
};

namespace detail {

/// Solution of x'' + 2k x' + w^2 x = 0 with x(0) = 1, x'(0) = 0.
inline double damped_unit_response(double w_sq, double k, double t) {
  const double disc = k * k - w_sq;
  const double decay = std::exp(-k * t);
  const double scale = std::max(std::abs(w_sq), k * k);
  if (std::abs(disc) <= 1e-14 * scale) return decay * (1.0 + k * t);
  if (disc < 0.0) {
    const double wd = std::sqrt(-disc);
    return decay * (std::cos(wd * t) + k / wd * std::sin(wd * t));
  }
  const double s = std::sqrt(disc);
  // x = e^{-kt} (cosh(st) + k/s sinh(st)), written to avoid overflow
  const double r1 = -k + s;
  const double r2 = -k - s;
  return ((s + k) * std::exp(r1 * t) + (s - k) * std::exp(r2 * t)) / (2.0 * s);
}

}  // namespace detail

/// Data behind the stationary vs damped oscillation figure: responses of
/// x'' = -omega^2 x - 2 k x' + f x to a unit displacement, sampled over the
/// given number of periods T = 2 pi / omega.
inline DemoSeries oscillation_demo(double omega, double resistance, double forcing = 0.0, double periods = 10.0,
                                   int samples = 1000) {
  if (!(omega > 0.0)) throw std::invalid_argument("oscillation_demo: omega must be positive");
  if (!(resistance >= 0.0)) throw std::invalid_argument("oscillation_demo: resistance must be >= 0");
  if (!(periods > 0.0) || samples < 2) throw std::invalid_argument("oscillation_demo: bad sampling");
  const double w_sq = omega * omega - forcing;
  const double period = 2.0 * std::numbers::pi / omega;
  DemoSeries d;
  d.t_over_period.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double u = periods * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double t = u * period;
    d.t_over_period.push_back(u);
    d.stationary.push_back(detail::damped_unit_response(w_sq, 0.0, t));
    d.damped.push_back(detail::damped_unit_response(w_sq, resistance, t));
  }
  return d;
}

/// Uses the ring's small-oscillation frequency at the rigid rate.
inline DemoSeries oscillation_demo(const RingSystem& s, double resistance, double forcing = 0.0,
                                   double periods = 10.0, int samples = 1000) {
  const double w = omega_equilibrium(s).omega;
  return oscillation_demo(epicyclic_omega(s, w * s.radius * s.radius), resistance, forcing, periods, samples);
}

}  // namespace ringcc

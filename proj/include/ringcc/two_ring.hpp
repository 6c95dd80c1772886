#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringcc/compensated_sum.hpp"
#include "ringcc/equilibrium.hpp"
#include "ringcc/errors.hpp"
#include "ringcc/libration.hpp"
#include "ringcc/ring_model.hpp"
#include "ringcc/ring_sums.hpp"

namespace ringcc {

enum class Arrangement {
  Collinear,     // outer particles on the same rays as inner ones
  Noncollinear,  // outer ring rotated by pi/N
};

enum class WhichRing { Inner, Outer };

/// How a single rigid rate is chosen for both rings.
enum class OmegaPolicy { FitOuter, FitInner, LeastSquares };

/// Two concentric N-gons plus a central mass: 2N + 1 bodies.
struct TwoRingSystem {
  std::int64_t n_per_ring = 2;
  double inner_mass = 0.0;
  double outer_mass = 0.0;
  double inner_radius = 1.0;
  double outer_radius = 2.0;
  double central_mass = 1.0;
  Arrangement arrangement = Arrangement::Collinear;
  double grav_constant = 1.0;
  OmegaPolicy omega_policy = OmegaPolicy::FitOuter;

  [[nodiscard]] double radius(WhichRing k) const { return k == WhichRing::Inner ? inner_radius : outer_radius; }
  [[nodiscard]] double mass(WhichRing k) const { return k == WhichRing::Inner ? inner_mass : outer_mass; }
  /// Angular offset of ring k's particle 0 from the reference ray.
  [[nodiscard]] double offset(WhichRing k) const {
    return k == WhichRing::Outer && arrangement == Arrangement::Noncollinear
               ? std::numbers::pi / static_cast<double>(n_per_ring)
               : 0.0;
  }
  /// Ring k viewed as a single-ring system around the same central mass.
  [[nodiscard]] RingSystem ring(WhichRing k) const {
    return {n_per_ring, mass(k), central_mass, radius(k), grav_constant};
  }
};

inline WhichRing other(WhichRing k) { return k == WhichRing::Inner ? WhichRing::Outer : WhichRing::Inner; }

inline void validate(const TwoRingSystem& s) {
  if (s.n_per_ring < 2) throw std::invalid_argument("two-ring system needs N >= 2");
  if (!(s.inner_radius > 0.0) || !(s.outer_radius > s.inner_radius) || !std::isfinite(s.outer_radius))
    throw std::invalid_argument("two-ring system needs 0 < R_i < R_o");
  if (!(s.inner_mass >= 0.0) || !(s.outer_mass >= 0.0) || !(s.central_mass >= 0.0))
    throw std::invalid_argument("two-ring masses must be non-negative");
  if (s.inner_mass == 0.0 && s.outer_mass == 0.0 && s.central_mass == 0.0)
    throw std::invalid_argument("two-ring system has no mass");
  if (!(s.grav_constant > 0.0)) throw std::invalid_argument("gravitational constant must be positive");
}

/// Non-fatal conditions worth reporting alongside results.
inline std::vector<std::string> warnings(const TwoRingSystem& s) {
  std::vector<std::string> out;
  if (s.arrangement == Arrangement::Collinear && s.outer_radius - s.inner_radius < 1e-6 * s.outer_radius)
    out.emplace_back("rings within 1e-6 R of touching; cross-ring forces diverge");
  if (s.n_per_ring <= 3) out.emplace_back("N <= 3 double rings are experimental");
  return out;
}

struct Body {
  double x = 0.0;
  double y = 0.0;
  double mass = 0.0;
};

/// Central body first, then inner ring particles 0..N-1, then outer ones.
inline std::vector<Body> build_two_ring(const TwoRingSystem& s) {
  validate(s);
  std::vector<Body> bodies;
  bodies.reserve(static_cast<std::size_t>(2 * s.n_per_ring + 1));
  bodies.push_back({0.0, 0.0, s.central_mass});
  for (const auto k : {WhichRing::Inner, WhichRing::Outer}) {
    for (std::int64_t j = 0; j < s.n_per_ring; ++j) {
      const double theta = detail::polygon_angle(j, s.n_per_ring) + s.offset(k);
      bodies.push_back({s.radius(k) * std::cos(theta), s.radius(k) * std::sin(theta), s.mass(k)});
    }
  }
  return bodies;
}

/// Linear-expansion coefficients of one ring's self-interaction,
/// F_k = B_k + A_k x + ..., f_k = b_k + a_k x + ..., and its own rigid rate.
struct RingExpansion {
  double a_big = 0.0;   // A_k = -G m_k / R^3 * sum [1/(2 sin)^3 - 3/(8 sin)]
  double b_big = 0.0;   // B_k = -G m_k / (4 R^2) * csc_sum
  double a_small = 0.0;  // tangential slope, zero by symmetry
  double b_small = 0.0;  // tangential offset, zero by symmetry
  double omega_sq = 0.0;
  bool symmetry_verified = false;  // the summed tangential terms really were below 1e-12 of |A_k| R
};

inline RingExpansion ring_expansion(const TwoRingSystem& s, WhichRing which, const SumOptions& opts = {}) {
  validate(s);
  const RingSystem ring = s.ring(which);
  const auto lc = linearize_radial(ring, opts);
  const double R = ring.radius;
  const double R3 = R * R * R;
  RingExpansion e;
  e.a_big = lc.a_lin;
  e.b_big = lc.a0;
  e.omega_sq = s.grav_constant * s.central_mass / R3 +
               s.grav_constant * ring.particle_mass / (4.0 * R3) * csc_sum(ring.n_particles, opts);
  e.symmetry_verified = std::abs(lc.tangential_0) <= 1e-12 * std::abs(lc.a0) &&
                        std::abs(lc.tangential_lin) <= 1e-12 * std::abs(lc.a_lin_parts[0]);
  return e;
}

/// Approximation A_k ~ -alpha G m N^3 / (2 pi R)^3 with a given alpha.
inline double a_big_approximation(const RingSystem& ring, double alpha_value) {
  const double nd = static_cast<double>(ring.n_particles);
  const double d = 2.0 * std::numbers::pi * ring.radius;
  return -alpha_value * ring.grav_constant * ring.particle_mass * nd * nd * nd / (d * d * d);
}

/// Largest |x| (scanning outward from the ring, positive side) for which the
/// linearised self-ring force stays within rel_tol * |A x| of the exact one.
inline double linear_validity_range(const RingSystem& ring, double rel_tol = 0.05, int samples = 2000,
                                    double x_max_over_r = 0.5) {
  const auto lc = linearize_radial(ring);
  const double R = ring.radius;
  const auto grid = detail::geometric_grid(1e-7 * R, x_max_over_r * R, samples);
  double last_ok = 0.0;
  for (const double x : grid) {
    const double exact = ring_force(ring, x, 0.0, false).radial;
    const double lin = lc.a0 + lc.a_lin * x;
    if (std::abs(exact - lin) >= rel_tol * std::abs(lc.a_lin * x)) break;
    last_ok = x;
  }
  return last_ok / R;
}

/// Acceleration of ring k's particle 0 displaced by (x, phi) from its home
/// slot: its own ring (others only), the whole other ring, and the central
/// mass. Radial is outward, tangential towards increasing angle.
inline ForceSample cross_ring_force(const TwoRingSystem& s, WhichRing which, double x, double phi) {
  validate(s);
  const WhichRing o = other(which);
  const double home = s.offset(which);
  const double r_t = s.radius(which) + x;
  if (!(r_t > 0.0)) throw std::invalid_argument("cross_ring_force: particle at or behind the centre");

  auto self = ring_force(s.ring(which), x, phi, false);

  const double R_s = s.radius(o);
  const double gm = s.grav_constant * s.mass(o);
  const double guard = kSeparationGuard * s.outer_radius;
  CompensatedSum<> radial;
  CompensatedSum<> tangential;
  for (std::int64_t j = 0; j < s.n_per_ring; ++j) {
    // Angle of particle j of the other ring as seen from the displaced particle.
    const double rel = detail::folded_polygon_angle(j, s.n_per_ring) + s.offset(o) - home - phi;
    const double c = std::cos(rel);
    const double sn = std::sin(rel);
    const double dr = R_s * c - r_t;
    const double dt = R_s * sn;
    const double d_sq = dr * dr + dt * dt;
    if (d_sq < guard * guard) throw CoincidenceError("cross_ring_force: particle coincides with the other ring");
    const double inv_d3 = 1.0 / (d_sq * std::sqrt(d_sq));
    radial += gm * dr * inv_d3;
    tangential += gm * dt * inv_d3;
  }
  const double central = -s.grav_constant * s.central_mass / (r_t * r_t);
  return {self.radial + radial.value() + central, self.tangential + tangential.value()};
}

/// Potential (GM/r convention) of every body except ring k's particle 0.
inline double two_ring_potential_excluding(const TwoRingSystem& s, WhichRing which, PlanarPoint p) {
  const auto bodies = build_two_ring(s);
  const std::size_t skip = which == WhichRing::Inner ? 1 : static_cast<std::size_t>(1 + s.n_per_ring);
  CompensatedSum<> u;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (i == skip || bodies[i].mass == 0.0) continue;
    const double d = std::hypot(p.x - bodies[i].x, p.y - bodies[i].y);
    if (d < kSeparationGuard * s.outer_radius) throw CoincidenceError("potential evaluated on a body");
    u += s.grav_constant * bodies[i].mass / d;
  }
  return u.value();
}

struct StationarityResult {
  double inner = 0.0;  // rotating-frame radial acceleration of an inner particle at rest
  double outer = 0.0;
  double omega = 0.0;  // common rigid rate used
  OmegaPolicy policy = OmegaPolicy::FitOuter;
};

/// Common rigid rotation rate under the system's policy.
inline double common_omega(const TwoRingSystem& s) {
  const double f_in = cross_ring_force(s, WhichRing::Inner, 0.0, 0.0).radial;
  const double f_out = cross_ring_force(s, WhichRing::Outer, 0.0, 0.0).radial;
  double w_sq = 0.0;
  switch (s.omega_policy) {
    case OmegaPolicy::FitOuter: w_sq = -f_out / s.outer_radius; break;
    case OmegaPolicy::FitInner: w_sq = -f_in / s.inner_radius; break;
    case OmegaPolicy::LeastSquares:
      w_sq = -(s.inner_radius * f_in + s.outer_radius * f_out) /
             (s.inner_radius * s.inner_radius + s.outer_radius * s.outer_radius);
      break;
  }
  if (w_sq < 0.0) throw DegenerateSystemError("common_omega: net outward pull, no real rotation rate");
  return std::sqrt(w_sq);
}

/// Radial residual accelerations of both rings at rest in the frame rotating
/// at the common rate; both vanish iff the double ring is a central
/// configuration at this geometry.
inline StationarityResult stationarity_residual(const TwoRingSystem& s) {
  validate(s);
  StationarityResult r;
  r.policy = s.omega_policy;
  r.omega = common_omega(s);
  const double w_sq = r.omega * r.omega;
  r.inner = s.inner_radius * w_sq + cross_ring_force(s, WhichRing::Inner, 0.0, 0.0).radial;
  r.outer = s.outer_radius * w_sq + cross_ring_force(s, WhichRing::Outer, 0.0, 0.0).radial;
  return r;
}

/// Places N particles of mass second_mass at a collinear libration point of
/// the base ring: the inner branch yields a new inner ring, the outer branch
/// a new outer ring, both on the base ring's rays.
inline TwoRingSystem place_second_ring(const RingSystem& base, double second_mass, LibrationBranch branch,
                                       const SolverOptions& opts = {}) {
  validate(base);
  if (branch == LibrationBranch::Noncollinear)
    throw std::invalid_argument("place_second_ring: the noncollinear point lies on the base ring itself");
  if (!(second_mass >= 0.0)) throw std::invalid_argument("place_second_ring: mass must be non-negative");
  const auto point = solve_full(base, branch, opts);
  if (!point) throw NoLibrationPointError("place_second_ring: no " + std::string(to_string(branch)) + " libration point");

  TwoRingSystem s;
  s.n_per_ring = base.n_particles;
  s.central_mass = base.central_mass;
  s.grav_constant = base.grav_constant;
  s.arrangement = Arrangement::Collinear;
  const double new_radius = base.radius * (1.0 + point->x_over_r);
  if (branch == LibrationBranch::Inner) {
    s.inner_radius = new_radius;
    s.inner_mass = second_mass;
    s.outer_radius = base.radius;
    s.outer_mass = base.particle_mass;
    s.omega_policy = OmegaPolicy::FitOuter;
  } else {
    s.inner_radius = base.radius;
    s.inner_mass = base.particle_mass;
    s.outer_radius = new_radius;
    s.outer_mass = second_mass;
    s.omega_policy = OmegaPolicy::FitInner;
  }
  return s;
}

}  // namespace ringcc

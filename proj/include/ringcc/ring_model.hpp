#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ringcc/compensated_sum.hpp"
#include "ringcc/errors.hpp"

namespace ringcc {

/// N equal masses on a regular polygon of radius R around a central mass M.
struct RingSystem {
  std::int64_t n_particles = 2;
  double particle_mass = 0.0;
  double central_mass = 1.0;
  double radius = 1.0;
  double grav_constant = 1.0;
};

inline void validate(const RingSystem& s) {
  if (s.n_particles < 2) throw std::invalid_argument("ring needs at least 2 particles");
  if (!(s.radius > 0.0) || !std::isfinite(s.radius)) throw std::invalid_argument("ring radius must be positive");
  if (!(s.grav_constant > 0.0) || !std::isfinite(s.grav_constant))
    throw std::invalid_argument("gravitational constant must be positive");
  if (!(s.particle_mass >= 0.0) || !std::isfinite(s.particle_mass))
    throw std::invalid_argument("particle mass must be non-negative");
  if (!(s.central_mass >= 0.0) || !std::isfinite(s.central_mass))
    throw std::invalid_argument("central mass must be non-negative");
  if (s.particle_mass == 0.0 && s.central_mass == 0.0)
    throw std::invalid_argument("at least one of particle mass and central mass must be positive");
}

/// Dimensionless system with G = M = R = 1 and the total ring mass given as a
/// fraction of the central mass.
inline RingSystem normalized_system(std::int64_t n, double ring_mass_ratio) {
  RingSystem s;
  s.n_particles = n;
  s.particle_mass = ring_mass_ratio / static_cast<double>(n);
  return s;
}

/// Offsets of a test particle in the frame rotating with the ring.
struct TestParticleState {
  double x = 0.0;        // radial offset from the ring radius
  double phi = 0.0;      // angle from the ray through ring particle 0
  double x_dot = 0.0;
  double phi_dot = 0.0;

  /// Angular momentum per unit mass, (phi_dot + omega)(R + x)^2.
  [[nodiscard]] double angular_momentum(double radius, double omega) const {
    const double r = radius + x;
    return (phi_dot + omega) * r * r;
  }
};

/// Acceleration split along the centre-particle ray (outward positive) and
/// perpendicular to it (towards increasing phi).
struct ForceSample {
  double radial = 0.0;
  double tangential = 0.0;
};

struct ChordGeometry {
  double dist_sq = 0.0;
  double cos_phi_j = 0.0;
};

/// Relative separation below which two points count as coincident.
inline constexpr double kSeparationGuard = 1e-12;

/// Squared distance from a test particle at radius R + x to a ring particle
/// separated from it by angle alpha_j, and the cosine of the angle between the
/// centre-particle ray and the particle-particle line.
inline ChordGeometry chord_geometry(const RingSystem& s, double x, double alpha_j) {
  const double R = s.radius;
  if (!(R + x > 0.0)) throw std::invalid_argument("test particle must lie outside the centre (R + x > 0)");
  const double chord = 2.0 * R * std::sin(0.5 * alpha_j);
  const double chord_sq_scaled = chord * chord * (1.0 + x / R);
  ChordGeometry g;
  g.dist_sq = x * x + chord_sq_scaled;
  const double guard = kSeparationGuard * R;
  if (g.dist_sq < guard * guard) {
    throw CoincidenceError("test particle coincides with a ring particle (x=" + std::to_string(x) +
                           ", alpha=" + std::to_string(alpha_j) + ")");
  }
  g.cos_phi_j = (2.0 * R * x + 2.0 * x * x + chord_sq_scaled) / (2.0 * (R + x) * std::sqrt(g.dist_sq));
  return g;
}

namespace detail {

inline double polygon_angle(std::int64_t j, std::int64_t n) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

/// Same angle as polygon_angle but with j folded into (-N/2, N/2], so that
/// half-angle sines near j = N keep their relative precision.
inline double folded_polygon_angle(std::int64_t j, std::int64_t n) {
  return polygon_angle(2 * j <= n ? j : j - n, n);
}

}  // namespace detail

/// Acceleration exerted by the ring on a test particle at radial offset x and
/// angular offset phi (relative to ring particle 0).
///
/// Terms run over j = 1..N-1 in ascending order; with include_nearest the
/// particle j = 0 (angular offset exactly phi) is summed first through the
/// same expression. Without it, the test particle is taken to be ring
/// particle 0 itself, displaced.
inline ForceSample ring_force(const RingSystem& s, double x, double phi, bool include_nearest) {
  const double R = s.radius;
  const double gm = s.grav_constant * s.particle_mass;
  CompensatedSum<> radial;
  CompensatedSum<> tangential;
  const std::int64_t first = include_nearest ? 0 : 1;
  for (std::int64_t j = first; j < s.n_particles; ++j) {
    const double alpha = detail::folded_polygon_angle(j, s.n_particles) + phi;
    const double half_sin = std::sin(0.5 * alpha);
    const double half_cos = std::cos(0.5 * alpha);
    const double dist_sq = chord_geometry(s, x, alpha).dist_sq;
    const double inv_d3 = 1.0 / (dist_sq * std::sqrt(dist_sq));
    radial += -gm * (2.0 * R * half_sin * half_sin + x) * inv_d3;
    tangential += -gm * (2.0 * R * half_sin * half_cos) * inv_d3;
  }
  return {radial.value(), tangential.value()};
}

/// Radial acceleration of the central mass at distance R + x.
inline double central_force(const RingSystem& s, double x) {
  const double r = s.radius + x;
  return -s.grav_constant * s.central_mass / (r * r);
}

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Gravitational potential (per unit test mass, positive convention GM/r) at
/// a planar point; ring particle j sits at polar angle 2 pi j / N.
inline double potential(const RingSystem& s, PlanarPoint p) {
  const double guard = kSeparationGuard * s.radius;
  const double r = std::hypot(p.x, p.y);
  CompensatedSum<> u;
  if (s.central_mass > 0.0) {
    if (r < guard) throw CoincidenceError("potential evaluated at the central mass");
    u += s.grav_constant * s.central_mass / r;
  }
  const double gm = s.grav_constant * s.particle_mass;
  for (std::int64_t j = 0; j < s.n_particles; ++j) {
    const double theta = detail::polygon_angle(j, s.n_particles);
    const double d = std::hypot(p.x - s.radius * std::cos(theta), p.y - s.radius * std::sin(theta));
    if (d < guard) throw CoincidenceError("potential evaluated at ring particle " + std::to_string(j));
    u += gm / d;
  }
  return u.value();
}

/// Planar position of a test particle given its rotating-frame offsets.
inline PlanarPoint to_planar(const RingSystem& s, double x, double phi) {
  const double r = s.radius + x;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace ringcc

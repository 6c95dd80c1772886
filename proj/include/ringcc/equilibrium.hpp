#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "ringcc/errors.hpp"
#include "ringcc/ring_model.hpp"
#include "ringcc/ring_sums.hpp"

namespace ringcc {

/// Rigid rotation rate of the ring and its Kepler reference.
struct EquilibriumInfo {
  double omega = 0.0;
  double omega_kepler = 0.0;
  double ratio = 1.0;  // omega / omega_kepler; +inf when M = 0
};

/// Omega^2 = G M / R^3 + (G m / 4 R^3) csc_sum(N).
///
/// This is exact for the N+1 body polygon: the pull of the other N-1 ring
/// particles on one of them is purely radial with magnitude G m csc_sum / 4R^2.
inline EquilibriumInfo omega_equilibrium(const RingSystem& s, const SumOptions& opts = {}) {
  if (s.central_mass == 0.0 && s.particle_mass == 0.0)
    throw DegenerateSystemError("omega_equilibrium: both central and ring masses are zero");
  validate(s);
  const double R3 = s.radius * s.radius * s.radius;
  const double kepler_sq = s.grav_constant * s.central_mass / R3;
  const double ring_sq = s.grav_constant * s.particle_mass / (4.0 * R3) * csc_sum(s.n_particles, opts);
  EquilibriumInfo info;
  info.omega = std::sqrt(kepler_sq + ring_sq);
  info.omega_kepler = std::sqrt(kepler_sq);
  info.ratio = s.central_mass > 0.0 ? info.omega / info.omega_kepler : std::numeric_limits<double>::infinity();
  return info;
}

struct OmegaRow {
  std::int64_t n = 0;
  double ring_mass_fraction = 0.0;
  double omega_ratio = 1.0;
};

/// Omega / Omega_0 against N at a fixed total ring mass N m = fraction * M
/// (G = M = R = 1).
inline std::vector<OmegaRow> omega_ratio_sweep(std::span<const std::int64_t> ns, double ring_mass_fraction,
                                               const SumOptions& opts = {}) {
  std::vector<OmegaRow> rows;
  rows.reserve(ns.size());
  for (const auto n : ns) {
    const auto info = omega_equilibrium(normalized_system(n, ring_mass_fraction), opts);
    rows.push_back({n, ring_mass_fraction, info.ratio});
  }
  return rows;
}

/// First-order expansion of the ring's radial and tangential pull on a
/// displaced ring particle, F(x) = a0 + a_lin x + O(x^2).
struct LinearCoeffs {
  double a0 = 0.0;     // -G m csc_sum / (4 R^2)
  double a_lin = 0.0;  // dF_r/dx at x = 0, equal to -(parts[0] - parts[1])
  std::array<double, 2> a_lin_parts{};  // G m csc3_sum / (8 R^3), 3 G m csc_sum / (8 R^3)
  double tangential_0 = 0.0;            // tangential pull at x = 0 (vanishes by symmetry)
  double tangential_lin = 0.0;          // d F_t / dx at x = 0 (vanishes by symmetry)
};

inline LinearCoeffs linearize_radial(const RingSystem& s, const SumOptions& opts = {}) {
  validate(s);
  const double gm = s.grav_constant * s.particle_mass;
  const double R = s.radius;
  const double R3 = R * R * R;
  const double c1 = csc_sum(s.n_particles, opts);
  const double c3 = csc3_sum(s.n_particles, opts);

  LinearCoeffs lc;
  lc.a0 = -gm / (4.0 * R * R) * c1;
  lc.a_lin_parts = {gm / (8.0 * R3) * c3, 3.0 * gm / (8.0 * R3) * c1};
  lc.a_lin = -(lc.a_lin_parts[0] - lc.a_lin_parts[1]);

  // Tangential terms summed as they stand; the j and N - j terms cancel.
  CompensatedSum<> t0;
  CompensatedSum<> t1;
  for (std::int64_t j = 1; j < s.n_particles; ++j) {
    const double half = 0.5 * detail::folded_polygon_angle(j, s.n_particles);
    const double sn = std::sin(half);
    const double cs = std::cos(half);
    const double chord3 = std::pow(2.0 * R * std::abs(sn), 3);
    t0 += -gm * 2.0 * R * sn * cs / chord3;
    t1 += 3.0 * gm * sn * cs / chord3;
  }
  lc.tangential_0 = t0.value();
  lc.tangential_lin = t1.value();
  return lc;
}

/// Sum over the ring of G m / (2 R |sin(alpha_j / 2)|)^3 with
/// alpha_j = 2 pi j / N + phi. The j = 0 term is included only on request.
inline double ring_stiffness(const RingSystem& s, double phi = 0.0, bool include_nearest = false) {
  const double gm = s.grav_constant * s.particle_mass;
  CompensatedSum<> acc;
  for (std::int64_t j = include_nearest ? 0 : 1; j < s.n_particles; ++j) {
    const double chord = 2.0 * s.radius * std::abs(std::sin(0.5 * (detail::folded_polygon_angle(j, s.n_particles) + phi)));
    if (chord < kSeparationGuard * s.radius) throw CoincidenceError("ring_stiffness: zero chord");
    acc += gm / (chord * chord * chord);
  }
  return acc.value();
}

/// Squared unperturbed radial frequency -2 G M / R^3 + 3 L^2 / R^4.
inline double fundamental_frequency_sq(const RingSystem& s, double angular_momentum) {
  const double R = s.radius;
  const double R3 = R * R * R;
  return -2.0 * s.grav_constant * s.central_mass / R3 + 3.0 * angular_momentum * angular_momentum / (R3 * R);
}

/// Frequency of small radial oscillations,
/// omega^2 = -2 G M / R^3 + 3 L^2 / R^4 + sum G m / (2 R sin(alpha_j/2))^3.
///
/// phi and include_nearest select the ring geometry as in ring_force; the
/// defaults describe a displaced ring particle.
inline double epicyclic_omega(const RingSystem& s, double angular_momentum, double phi = 0.0,
                              bool include_nearest = false) {
  validate(s);
  const double radicand = fundamental_frequency_sq(s, angular_momentum) + ring_stiffness(s, phi, include_nearest);
  if (radicand < 0.0) throw ImaginaryFrequencyError("epicyclic_omega: negative radicand", radicand);
  return std::sqrt(radicand);
}

/// Amplitude at which the ring term sum m_j / (2 R sin)^3 equals 6 M x / R^4;
/// oscillations need amplitudes well below it.
inline double oscillation_threshold(const RingSystem& s, const SumOptions& opts = {}) {
  validate(s);
  if (!(s.central_mass > 0.0)) throw std::invalid_argument("oscillation_threshold needs a central mass");
  const double R = s.radius;
  const double ring = s.particle_mass / (8.0 * R * R * R) * csc3_sum(s.n_particles, opts);
  return ring / (6.0 * s.central_mass / (R * R * R * R));
}

struct DampedParams {
  double resistance = 0.0;
  double omega0 = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  double gamma_ratio = 1.0;
  double wavelength = 2.0 * std::numbers::pi;
  bool stationary = false;  // gamma within tolerance of an integer
};

inline constexpr double kIntegerGammaTolerance = 1e-6;

/// Phase lag and frequency ratio of the forced, resisted oscillation:
/// tan(delta) = 2 k omega / (omega0^2 - omega^2), gamma = omega / omega0 =
/// sqrt(S / omega0^2 + 1), wavelength = 2 pi / gamma.
inline DampedParams damped_response(const RingSystem& s, double angular_momentum, double resistance,
                                    double integer_tolerance = kIntegerGammaTolerance) {
  validate(s);
  if (!(resistance >= 0.0)) throw std::invalid_argument("damped_response: resistance must be non-negative");
  const double w0_sq = fundamental_frequency_sq(s, angular_momentum);
  if (!(w0_sq > 0.0)) throw ImaginaryFrequencyError("damped_response: non-positive fundamental frequency", w0_sq);
  const double ring = ring_stiffness(s);
  const double w_sq = w0_sq + ring;
  if (w_sq < 0.0) throw ImaginaryFrequencyError("damped_response: negative omega^2", w_sq);

  DampedParams p;
  p.resistance = resistance;
  p.omega0 = std::sqrt(w0_sq);
  p.omega = std::sqrt(w_sq);
  p.gamma_ratio = std::sqrt(ring / w0_sq + 1.0);
  p.wavelength = 2.0 * std::numbers::pi / p.gamma_ratio;
  p.stationary = std::abs(p.gamma_ratio - std::round(p.gamma_ratio)) < integer_tolerance;
  if (resistance == 0.0) {
    p.delta = 0.0;
  } else {
    const double denom = w0_sq - w_sq;
    if (denom == 0.0) throw SingularityError("damped_response: resonance (omega == omega0), phase undefined");
    p.delta = std::atan(2.0 * resistance * p.omega / denom);
  }
  return p;
}

struct ForceRatioRow {
  double x_over_r = 0.0;
  double ratio = 0.0;  // |radial| / |tangential|, capped
  bool capped = false;
};

inline constexpr double kForceRatioCap = 1e300;

/// |radial| / |tangential| of the ring's pull on a free test particle
/// (every ring particle included) along the ray at angle phi.
inline std::vector<ForceRatioRow> force_ratio_series(const RingSystem& s, std::span<const double> x_over_r,
                                                     double phi) {
  validate(s);
  std::vector<ForceRatioRow> rows;
  rows.reserve(x_over_r.size());
  for (const double u : x_over_r) {
    const auto f = ring_force(s, u * s.radius, phi, true);
    ForceRatioRow row{u, kForceRatioCap, true};
    const double num = std::abs(f.radial);
    const double den = std::abs(f.tangential);
    // Tangential components below roundoff of the radial sum count as zero.
    if (den > 1e-13 * num && num / den < kForceRatioCap) {
      row.ratio = num / den;
      row.capped = false;
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<ForceRatioRow> force_ratio_series(const RingSystem& s, std::span<const double> x_over_r) {
  return force_ratio_series(s, x_over_r, std::numbers::pi / (4.0 * static_cast<double>(s.n_particles)));
}

}  // namespace ringcc

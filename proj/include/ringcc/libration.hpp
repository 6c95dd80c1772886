#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "ringcc/equilibrium.hpp"
#include "ringcc/errors.hpp"
#include "ringcc/parallel.hpp"
#include "ringcc/polynomial.hpp"
#include "ringcc/ring_model.hpp"
#include "ringcc/ring_sums.hpp"

namespace ringcc {

enum class LibrationBranch { Inner, Outer, Noncollinear };

enum class SolveMethod { Full, Quintic, Cubic, Asymptotic };

inline std::string_view to_string(LibrationBranch b) {
  switch (b) {
    case LibrationBranch::Inner: return "inner";
    case LibrationBranch::Outer: return "outer";
    case LibrationBranch::Noncollinear: return "noncollinear";
  }
  return "?";
}

inline std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Full: return "full";
    case SolveMethod::Quintic: return "quintic";
    case SolveMethod::Cubic: return "cubic";
    case SolveMethod::Asymptotic: return "asymptotic";
  }
  return "?";
}

/// +1 for the outer branch, -1 for the inner one.
inline double branch_sign(LibrationBranch b) {
  if (b == LibrationBranch::Noncollinear)
    throw std::invalid_argument("the noncollinear branch has no collinear offset sign");
  return b == LibrationBranch::Outer ? 1.0 : -1.0;
}

struct LibrationResult {
  LibrationBranch branch = LibrationBranch::Inner;
  double x_over_r = 0.0;
  SolveMethod method = SolveMethod::Full;
  bool converged = false;
  double residual = 0.0;  // rotating-frame radial acceleration left at the root
  int iterations = 0;
  std::string note;       // validity warnings, empty when none
};

/// Net radial acceleration, in the frame rotating at the rigid rate Omega, of
/// a particle at rest on the ray through ring particle 0:
///
///   f(x) = (R + x) Omega^2 - G M / (R + x)^2 + F_ring(x),
///
/// with F_ring the exact pull of all N ring particles, the nearest one (at
/// distance |x|) included. Stationary points are the zeros of f.
inline double residual_collinear(const RingSystem& s, double x, double omega_sq) {
  return (s.radius + x) * omega_sq + central_force(s, x) + ring_force(s, x, 0.0, true).radial;
}

inline double residual_collinear(const RingSystem& s, double x, LibrationBranch branch, const SumOptions& opts = {}) {
  validate(s);
  if (x == 0.0) throw CoincidenceError("residual_collinear: x = 0 is the ring particle itself");
  if ((x > 0.0) != (branch == LibrationBranch::Outer))
    throw std::invalid_argument("residual_collinear: sign of x does not match the branch");
  const double w = omega_equilibrium(s, opts).omega;
  return residual_collinear(s, x, w * w);
}

struct SolverOptions {
  int grid_points = 400;
  double x_min_over_r = 1e-9;
  double inner_max_over_r = 0.9;
  double outer_max_over_r = 1.0;
  double tolerance_factor = 1e-12;  // times G M / R^2, or G m N / R^2 when M = 0
  SumOptions sums{};
};

/// Acceleration scale used for the convergence test.
inline double residual_scale(const RingSystem& s) {
  const double R2 = s.radius * s.radius;
  if (s.central_mass > 0.0) return s.grav_constant * s.central_mass / R2;
  return s.grav_constant * s.particle_mass * static_cast<double>(s.n_particles) / R2;
}

namespace detail {

/// Geometric grid of n points from lo to hi inclusive.
inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(ratio * static_cast<double>(i));
  g.back() = hi;
  return g;
}

template <typename F>
std::pair<double, int> refine_root(F&& f, double a, double b, double fa, double fb) {
  boost::uintmax_t iters = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
  const double lo = bracket.first;
  const double hi = bracket.second;
  const double root = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  return {root, static_cast<int>(iters)};
}

}  // namespace detail

/// Collinear libration point on the requested branch: sign-change scan of
/// residual_collinear on a geometric grid in |x|, starting next to the ring
/// particle, then bracketed refinement. Returns nullopt when the residual has
/// no sign change (the point does not exist).
inline std::optional<LibrationResult> solve_full(const RingSystem& s, LibrationBranch branch,
                                                 const SolverOptions& opts = {}) {
  validate(s);
  const double sign = branch_sign(branch);
  const double R = s.radius;
  const double w = omega_equilibrium(s, opts.sums).omega;
  const double w_sq = w * w;
  const double x_max = (branch == LibrationBranch::Inner ? opts.inner_max_over_r : opts.outer_max_over_r) * R;
  const auto grid = detail::geometric_grid(opts.x_min_over_r * R, x_max, opts.grid_points);

  auto f = [&](double magnitude) { return residual_collinear(s, sign * magnitude, w_sq); };

  double prev_u = grid.front();
  double prev_f = f(prev_u);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double u = grid[i];
    const double fu = f(u);
    if (fu == 0.0 || (fu < 0.0) != (prev_f < 0.0)) {
      LibrationResult r;
      r.branch = branch;
      r.method = SolveMethod::Full;
      double root = u;
      if (fu != 0.0) {
        const auto [x, iters] = detail::refine_root(f, prev_u, u, prev_f, fu);
        root = x;
        r.iterations = iters;
      }
      r.x_over_r = sign * root / R;
      r.residual = f(root);
      r.converged = std::abs(r.residual) < opts.tolerance_factor * residual_scale(s);
      if (!r.converged) {
        // Next to a pole of the residual the slope can exceed what the
        // tolerance allows at double resolution; report the best bracket end.
        r.note = "residual above tolerance at the resolution limit";
      }
      return r;
    }
    prev_u = u;
    prev_f = fu;
  }
  return std::nullopt;
}

/// Coefficients of the degree-5 equilibrium polynomial in x obtained by
/// replacing the far ring particles with their linear expansion -(B + A x)
/// and clearing the denominators x^2 (R + x)^2:
///
///   -(R+x)^3 x^2 Omega^2 + G M x^2 + s G m (R+x)^2 + (A x + B)(R+x)^2 x^2 = 0.
struct QuinticCoeffs {
  std::array<double, 6> c{};  // c[k] multiplies x^k
  double branch_sign = -1.0;

  [[nodiscard]] Polynomial polynomial() const { return Polynomial(std::vector<double>(c.begin(), c.end())); }
  [[nodiscard]] double operator()(double x) const { return polynomial()(x); }
};

/// Raw-parameter form; gm and g_central are G m and G M.
inline QuinticCoeffs quintic_from_parts(double R, double g_central, double gm, double omega_sq, double a_coeff,
                                        double b_coeff, double sign) {
  const Polynomial r_plus_x{R, 1.0};
  const Polynomial x_sq{0.0, 0.0, 1.0};
  const Polynomial r_plus_x_sq = r_plus_x * r_plus_x;
  const Polynomial p = (-omega_sq) * (r_plus_x_sq * r_plus_x * x_sq) + g_central * x_sq + (sign * gm) * r_plus_x_sq +
                       Polynomial{b_coeff, a_coeff} * r_plus_x_sq * x_sq;
  QuinticCoeffs q;
  q.branch_sign = sign;
  for (std::size_t k = 0; k < q.c.size(); ++k) q.c[k] = p[k];
  return q;
}

inline QuinticCoeffs quintic_coeffs(const RingSystem& s, LibrationBranch branch, const SumOptions& opts = {}) {
  validate(s);
  const auto ab = coeff_AB(s, opts);
  const double w = omega_equilibrium(s, opts).omega;
  return quintic_from_parts(s.radius, s.grav_constant * s.central_mass, s.grav_constant * s.particle_mass, w * w,
                            ab.a_coeff, ab.b_coeff, branch_sign(branch));
}

/// Real roots of the quintic in (lo, hi), ascending.
inline std::vector<double> solve_quintic(const QuinticCoeffs& q, double lo, double hi) {
  return real_roots(q.polynomial(), lo, hi);
}

/// Root of the quintic on the requested branch nearest the ring.
inline std::optional<LibrationResult> solve_quintic_branch(const RingSystem& s, LibrationBranch branch,
                                                           const SolverOptions& opts = {}) {
  const auto q = quintic_coeffs(s, branch, opts.sums);
  const double R = s.radius;
  const auto roots = branch == LibrationBranch::Inner ? solve_quintic(q, -opts.inner_max_over_r * R, 0.0)
                                                      : solve_quintic(q, 0.0, opts.outer_max_over_r * R);
  if (roots.empty()) return std::nullopt;
  const double x = branch == LibrationBranch::Inner ? roots.back() : roots.front();
  LibrationResult r;
  r.branch = branch;
  r.method = SolveMethod::Quintic;
  r.x_over_r = x / R;
  r.residual = q(x);
  r.converged = true;
  return r;
}

/// Validity bound on m / M for the small-offset approximations.
inline double cubic_validity_bound(std::int64_t n) {
  const double nd = static_cast<double>(n);
  return 7.84048 / (nd * nd * nd);
}

inline constexpr double kCubicSingularGuard = 1e-3;

/// x^3 = s m R^3 / (M (3 - k)), k = 2.4041 m N^3 / (8 M pi^3), i.e. a
/// Kepler rotation rate with the far ring linearised.
inline LibrationResult approx_cubic(const RingSystem& s, LibrationBranch branch,
                                    double singular_guard = kCubicSingularGuard) {
  validate(s);
  if (!(s.central_mass > 0.0)) throw std::invalid_argument("approx_cubic needs a central mass");
  const double sign = branch_sign(branch);
  const double mass_ratio = s.particle_mass / s.central_mass;
  const double nd = static_cast<double>(s.n_particles);
  const double k = 2.4041 * mass_ratio * nd * nd * nd / (8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);
  if (std::abs(3.0 - k) < singular_guard)
    throw SingularityError("approx_cubic: k = " + std::to_string(k) + " is at the singular point k = 3");
  if (k > 3.0) throw SingularityError("approx_cubic: k = " + std::to_string(k) + " > 3, outside the approximation");

  LibrationResult r;
  r.branch = branch;
  r.method = SolveMethod::Cubic;
  r.x_over_r = sign * std::cbrt(mass_ratio / (3.0 - k));
  r.converged = true;
  if (mass_ratio >= cubic_validity_bound(s.n_particles)) r.note = "m/M outside the small-mass validity region";
  if (std::abs(r.x_over_r) >= std::numbers::pi / nd) {
    if (!r.note.empty()) r.note += "; ";
    r.note += "|x|/R beyond pi/N";
  }
  return r;
}

enum class AsymptoticLimit { SmallMass, SmallB };

/// Leading terms of the quintic's roots in two limits, using the signed ring
/// coefficients A_s = -A and B_s = -B:
///   small mass:  x = s (G m / (A_s + 3 W))^(1/3), W = Omega^2 (rigid rate)
///   small B:     x = -B_s / (A_s + 3 W),        W = G M / R^3
/// The small-B shift of the zero root vanishes identically at the rigid
/// rate, so that limit is taken at the Kepler rate.
inline LibrationResult asymptotic_roots(const RingSystem& s, AsymptoticLimit limit,
                                        LibrationBranch branch = LibrationBranch::Outer, const SumOptions& opts = {}) {
  validate(s);
  const auto ab = coeff_AB(s, opts);
  const double a_signed = -ab.a_coeff;
  const double b_signed = -ab.b_coeff;
  LibrationResult r;
  r.method = SolveMethod::Asymptotic;
  r.converged = true;
  if (limit == AsymptoticLimit::SmallMass) {
    const double w = omega_equilibrium(s, opts).omega;
    const double denom = a_signed + 3.0 * w * w;
    if (!(denom > 0.0)) throw SingularityError("asymptotic_roots: A + 3W is not positive");
    r.branch = branch;
    r.x_over_r = branch_sign(branch) * std::cbrt(s.grav_constant * s.particle_mass / denom) / s.radius;
  } else {
    const double R = s.radius;
    const double w_sq = s.grav_constant * s.central_mass / (R * R * R);
    const double denom = a_signed + 3.0 * w_sq;
    if (denom == 0.0) throw SingularityError("asymptotic_roots: A + 3W vanishes");
    const double x = -b_signed / denom;
    r.branch = x < 0.0 ? LibrationBranch::Inner : LibrationBranch::Outer;
    r.x_over_r = x / R;
  }
  return r;
}

/// Classical restricted three-body collinear offset, (m / 3M)^(1/3).
inline double three_body_collinear(double mass_ratio) {
  if (!(mass_ratio > 0.0)) throw std::invalid_argument("three_body_collinear needs m/M > 0");
  return std::cbrt(mass_ratio / 3.0);
}

struct NoncollinearResidual {
  double radial = 0.0;
  double tangential = 0.0;
};

/// Rotating-frame residual at the mid-arc point phi = pi/N, x = 0.
inline NoncollinearResidual noncollinear_check(const RingSystem& s, const SumOptions& opts = {}) {
  validate(s);
  const double w = omega_equilibrium(s, opts).omega;
  const double phi = std::numbers::pi / static_cast<double>(s.n_particles);
  const auto f = ring_force(s, 0.0, phi, true);
  return {s.radius * w * w + central_force(s, 0.0) + f.radial, f.tangential};
}

/// Ratios of total ring mass to central mass, and ring sizes, of the
/// published libration tables.
inline constexpr std::array<std::int64_t, 3> kTableRingCounts{50, 100, 1000};
inline constexpr std::array<double, 10> kTableInnerRatios{1e-5, 1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0, 1e4};
inline constexpr std::array<double, 8> kTableOuterRatios{1e-5, 1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0};

struct SweepRow {
  std::int64_t n = 0;
  double ring_mass_ratio = 0.0;  // N m / M
  std::optional<LibrationResult> inner;
  std::optional<LibrationResult> outer;
  double x0_three_body = 0.0;
};

/// One row per (N, ratio) pair in input order (N outermost). Rows are
/// independent and are spread over up to `threads` workers; the output is
/// identical for any thread count.
inline std::vector<SweepRow> sweep_tables(std::span<const std::int64_t> ns, std::span<const double> ratios,
                                          const SolverOptions& opts = {}, unsigned threads = 1) {
  if (ns.empty() || ratios.empty()) throw std::invalid_argument("sweep_tables needs non-empty sets");
  return parallel_map(ns.size() * ratios.size(), threads, [&](std::size_t idx) {
    SweepRow row;
    row.n = ns[idx / ratios.size()];
    row.ring_mass_ratio = ratios[idx % ratios.size()];
    const auto sys = normalized_system(row.n, row.ring_mass_ratio);
    if (row.ring_mass_ratio > 0.0) {
      row.inner = solve_full(sys, LibrationBranch::Inner, opts);
      row.outer = solve_full(sys, LibrationBranch::Outer, opts);
      row.x0_three_body = three_body_collinear(sys.particle_mass / sys.central_mass);
    }
    return row;
  });
}

}  // namespace ringcc

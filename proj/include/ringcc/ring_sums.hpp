#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <type_traits>

#include "ringcc/compensated_sum.hpp"
#include "ringcc/ring_model.hpp"

namespace ringcc {

/// The two trigonometric ring sums, over j = 1..N-1 of csc(pi j / N)^p.
enum class SumKind { Csc, Csc3 };

enum class AsymptoticVariant {
  Corrected,     // + Euler-Mascheroni constant
  Literal,  // - 0.58, kept for comparison only
};

inline constexpr double kApery = 1.2020569031595942853997;  // zeta(3)
inline constexpr double kTwoZeta3 = 2.0 * kApery;

/// Above this N the sums switch to their asymptotic forms.
inline constexpr std::int64_t kDefaultAsymptoticThreshold = 10'000'000;

struct SumOptions {
  std::int64_t asymptotic_threshold = kDefaultAsymptoticThreshold;
};

namespace detail {

inline void require_ring_count(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("ring sums need N >= 2");
}

/// Direct compensated sum, ascending j. The argument is folded onto
/// (0, pi/2] so the terms near j = N keep full relative accuracy.
inline double direct_sum(std::int64_t n, int power) {
  CompensatedSum<> acc;
  const double nd = static_cast<double>(n);
  for (std::int64_t j = 1; j < n; ++j) {
    const std::int64_t k = std::min(j, n - j);
    const double inv = 1.0 / std::sin(std::numbers::pi * static_cast<double>(k) / nd);
    acc += power == 1 ? inv : inv * inv * inv;
  }
  return acc.value();
}

}  // namespace detail

/// (2N/pi)(ln(2N/pi) + c) with c = gamma (corrected) or c = -0.58 (literal).
inline double csc_sum_asymptotic(std::int64_t n, AsymptoticVariant variant = AsymptoticVariant::Corrected) {
  detail::require_ring_count(n);
  const double scale = 2.0 * static_cast<double>(n) / std::numbers::pi;
  const double c = variant == AsymptoticVariant::Corrected ? std::numbers::egamma : -0.58;
  return scale * (std::log(scale) + c);
}

/// 2 zeta(3) (N/pi)^3 + (1/2) csc-sum - N/(6 pi); the last two terms come
/// from the 1/(2y) and smooth parts of csc^3 y and are below 1e-12 relative
/// once N exceeds 10^6.
inline double csc3_sum_asymptotic(std::int64_t n) {
  detail::require_ring_count(n);
  const double q = static_cast<double>(n) / std::numbers::pi;
  return kTwoZeta3 * q * q * q + 0.5 * csc_sum_asymptotic(n) - static_cast<double>(n) / (6.0 * std::numbers::pi);
}

/// Sum over j = 1..N-1 of 1 / sin(pi j / N).
inline double csc_sum(std::int64_t n, const SumOptions& opts = {}) {
  detail::require_ring_count(n);
  if (n > opts.asymptotic_threshold) return csc_sum_asymptotic(n);
  return detail::direct_sum(n, 1);
}

/// Sum over j = 1..N-1 of 1 / sin^3(pi j / N).
inline double csc3_sum(std::int64_t n, const SumOptions& opts = {}) {
  detail::require_ring_count(n);
  if (n > opts.asymptotic_threshold) return csc3_sum_asymptotic(n);
  return detail::direct_sum(n, 3);
}

inline double ring_sum(SumKind kind, std::int64_t n, const SumOptions& opts = {}) {
  return kind == SumKind::Csc ? csc_sum(n, opts) : csc3_sum(n, opts);
}

/// Ring-sum coefficients of the collinear equilibrium equation.
struct CoeffAB {
  double a_coeff = 0.0;  // G m / (8 R^3) * csc3_sum, 1/time^2
  double b_coeff = 0.0;  // G m / (4 R^2) * csc_sum, acceleration
};

inline CoeffAB coeff_AB(const RingSystem& s, const SumOptions& opts = {}) {
  validate(s);
  const double gm = s.grav_constant * s.particle_mass;
  const double R = s.radius;
  return {gm / (8.0 * R * R * R) * csc3_sum(s.n_particles, opts), gm / (4.0 * R * R) * csc_sum(s.n_particles, opts)};
}

/// pi^3 / N^3 * csc3_sum(N); tends to 2 zeta(3) from above.
inline double alpha(std::int64_t n, const SumOptions& opts = {}) {
  const double q = std::numbers::pi / static_cast<double>(n);
  return q * q * q * csc3_sum(n, opts);
}

/// The tabulated alpha convention, pi^3 / N^3 * (csc3_sum(N) + 1). It differs
/// from alpha() by exactly pi^3 / N^3.
inline double alpha_tabulated(std::int64_t n, const SumOptions& opts = {}) {
  const double q = std::numbers::pi / static_cast<double>(n);
  return q * q * q * (csc3_sum(n, opts) + 1.0);
}

/// 2 * sum_{i=1}^{N/2} 1/i^3 for even N.
///
/// With Real = double the terms are added with compensation. Real = float
/// performs plain single-precision accumulation in ascending i; that partial
/// sum stops growing once 1/i^3 drops below half an ulp (near i = 283), so it
/// levels off at 2.4041014 instead of approaching 2 zeta(3). With Real =
/// double and N above the asymptotic threshold the sum is
/// zeta(3) - 1/(2K^2) + 1/(2K^3) - 1/(4K^4), K = N/2.
template <typename Real = double>
inline double alpha_prime(std::int64_t n, const SumOptions& opts = {}) {
  static_assert(std::is_same_v<Real, double> || std::is_same_v<Real, float>);
  detail::require_ring_count(n);
  if (n % 2 != 0) throw std::domain_error("alpha_prime is defined for even N only");
  if constexpr (std::is_same_v<Real, float>) {
    float acc = 0.0f;
    for (std::int64_t i = 1; i <= n / 2; ++i) {
      const auto fi = static_cast<float>(i);
      const float next = acc + 1.0f / (fi * fi * fi);
      if (next == acc) break;
      acc = next;
    }
    return 2.0 * static_cast<double>(acc);
  } else {
    if (n > opts.asymptotic_threshold) {
      const double k = static_cast<double>(n / 2);
      const double k2 = k * k;
      return 2.0 * (kApery - 0.5 / k2 + 0.5 / (k2 * k) - 0.25 / (k2 * k2));
    }
    CompensatedSum<> acc;
    // Descending i adds the small terms first; the value is still deterministic.
    for (std::int64_t i = n / 2; i >= 1; --i) {
      const double id = static_cast<double>(i);
      acc += 1.0 / (id * id * id);
    }
    return 2.0 * acc.value();
  }
}

}  // namespace ringcc

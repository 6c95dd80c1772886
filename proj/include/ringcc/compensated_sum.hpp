#pragma once

#include <cmath>

namespace ringcc {

/// Neumaier's variant of Kahan summation.
///
/// Keeps a running compensation term built from the exact rounding error of
/// each addition (two-sum), so the result is accurate even when the terms
/// span many orders of magnitude and the large ones arrive first.
template <typename Real = double>
struct CompensatedSum {
  Real sum = Real{0};
  Real compensation = Real{0};

  constexpr auto operator+=(Real value) -> CompensatedSum& {
    const Real t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
    return *this;
  }

  [[nodiscard]] constexpr auto value() const -> Real { return sum + compensation; }
  constexpr operator Real() const { return value(); }
};

}  // namespace ringcc

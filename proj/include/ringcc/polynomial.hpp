#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ringcc {

/// Dense real polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> c) : coeffs_(c) {}
  explicit Polynomial(std::vector<double> c) : coeffs_(std::move(c)) {}

  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  [[nodiscard]] double operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }

  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{0.0};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial{0.0};
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(double k, const Polynomial& p) {
    std::vector<double> c = p.coeffs_;
    for (auto& v : c) v *= k;
    return Polynomial(std::move(c));
  }

 private:
  std::vector<double> coeffs_;
};

namespace detail {

/// Bisection to the last representable bracket; f(lo) and f(hi) differ in sign.
template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline Polynomial trimmed(const Polynomial& p) {
  auto c = p.coeffs();
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return Polynomial(std::move(c));
}

}  // namespace detail

/// All real roots of p in the open interval (lo, hi), ascending.
///
/// Roots of p' split the interval into pieces on which p is monotone; each
/// piece holds at most one root, isolated by its sign change and refined by
/// bisection. Critical points where p vanishes exactly (even-multiplicity
/// roots) are reported too.
inline std::vector<double> real_roots(const Polynomial& poly, double lo, double hi) {
  const Polynomial p = detail::trimmed(poly);
  std::vector<double> roots;
  if (p.degree() == 0) return roots;
  if (p.degree() == 1) {
    const double r = -p[0] / p[1];
    if (r > lo && r < hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> knots{lo};
  for (double c : real_roots(p.derivative(), lo, hi)) knots.push_back(c);
  knots.push_back(hi);

  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = p(a);
    const double fb = p(b);
    if (i > 0 && fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0)) roots.push_back(detail::bisect(p, a, b));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace ringcc

#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace chernoff {

namespace detail {

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)).
// All terms positive, so no cancellation for moderate x.
inline double erf_series(double x) noexcept {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// exp(x^2) erfc(x) for x > 0 from the continued fraction
//   sqrt(pi) e^{x^2} erfc(x) = 1 / (x + (1/2) / (x + 1 / (x + (3/2) / (x + ...)))),
// evaluated with the modified Lentz algorithm.
inline double erfcx_continued_fraction(double x) noexcept {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double ak = 0.5 * k;
    d = x + ak * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = x + ak / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

inline constexpr double kSeriesCutoff = 2.0;

}  // namespace detail

/// Complementary error function 2/sqrt(pi) * int_x^inf e^{-y^2} dy.
inline double erfc(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x <= detail::kSeriesCutoff) return 1.0 - detail::erf_series(x);
  if (x > 27.3) return 0.0;  // below the smallest subnormal
  return std::exp(-x * x) * detail::erfcx_continued_fraction(x);
}

/// Scaled complement exp(x^2) erfc(x). Finite for all x >= 0 without underflow.
inline double erfcx(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x <= detail::kSeriesCutoff) return std::exp(x * x) * (1.0 - detail::erf_series(x));
  return detail::erfcx_continued_fraction(x);
}

}  // namespace chernoff

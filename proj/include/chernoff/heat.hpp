#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chernoff/erfc.hpp"
#include "chernoff/error.hpp"
#include "chernoff/initial_condition.hpp"
#include "chernoff/shift_measure.hpp"

// Heat equation u_t = a^2 u_xx on the line, its exact solutions, and three
// Chernoff functions built from symmetric shifts.

namespace chernoff::heat {

using BigInt = boost::multiprecision::cpp_int;

struct HeatParams {
  double a = 1.0;

  HeatParams() = default;
  explicit HeatParams(double a_) : a(a_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("heat: a must be finite and > 0");
  }
};

enum class SchemeKind { G1, G2, G3 };

inline const char* to_string(SchemeKind k) noexcept {
  switch (k) {
    case SchemeKind::G1:
      return "g1";
    case SchemeKind::G2:
      return "g2";
    case SchemeKind::G3:
      return "g3";
  }
  return "?";
}

struct HeatScheme {
  SchemeKind kind = SchemeKind::G1;
};

namespace detail {

inline void require_positive_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(op) + ": t must be finite and > 0");
}

inline void require_nonnegative_time(double t, const char* op) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(op) + ": t must be finite and >= 0");
}

}  // namespace detail

/// Gaussian kernel 1/(2a sqrt(pi t)) exp(-x^2 / (4 a^2 t)).
inline double heat_kernel(const HeatParams& p, double t, double x) {
  detail::require_positive_time(t, "heat_kernel");
  return std::exp(-x * x / (4.0 * p.a * p.a * t)) / (2.0 * p.a * std::sqrt(std::numbers::pi * t));
}

inline double heat_exact_sin(const HeatParams& p, double t, double x) {
  detail::require_nonnegative_time(t, "heat_exact_sin");
  return std::exp(-p.a * p.a * t) * std::sin(x);
}

/// Solution for u0 = exp(-|x|) with a = 1:
///   e^{t-x} (1 - erfc(x/(2 sqrt t) - sqrt t)/2) + e^{t+x} erfc(x/(2 sqrt t) + sqrt t)/2.
/// Evaluated at |x| (the solution is even) through the scaled complement
/// erfcx so neither term overflows or cancels.
inline double heat_exact_expabs(double t, double x) {
  detail::require_positive_time(t, "heat_exact_expabs");
  if (!std::isfinite(x)) throw DomainError("heat_exact_expabs: non-finite x");
  const double ax = std::abs(x);
  const double rt = std::sqrt(t);
  const double z1 = rt - ax / (2.0 * rt);  // 1 - erfc(-z1)/2 = erfc(z1)/2
  const double z2 = ax / (2.0 * rt) + rt;
  const double gauss = std::exp(-ax * ax / (4.0 * t));
  const double second = 0.5 * gauss * erfcx(z2);
  const double first = z1 >= 0.0 ? 0.5 * gauss * erfcx(z1) : 0.5 * std::exp(t - ax) * erfc(z1);
  return first + second;
}

/// Poisson integral int Phi(t, x - y) u0(y) dy by composite Simpson on
/// |y - x| <= 12 a sqrt(t), with panels split at the kinks of u0.
inline double heat_exact_quadrature(const InitialCondition& u0, const HeatParams& p, double t, double x) {
  detail::require_positive_time(t, "heat_exact_quadrature");
  if (!std::isfinite(x)) throw DomainError("heat_exact_quadrature: non-finite x");
  const double scale = p.a * std::sqrt(t);
  const double lo = x - 12.0 * scale;
  const double hi = x + 12.0 * scale;
  const double h_target = std::min(scale / 400.0, 0.005);

  std::vector<double> cuts{lo};
  for (double k : u0.kinks())
    if (k > lo && k < hi) cuts.push_back(k);
  cuts.push_back(hi);

  const double norm = 1.0 / (2.0 * p.a * std::sqrt(std::numbers::pi * t));
  const double inv4 = 1.0 / (4.0 * p.a * p.a * t);
  auto integrand = [&](double y) {
    const double d = x - y;
    return norm * std::exp(-d * d * inv4) * u0.eval_unchecked(y);
  };

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    auto panels = static_cast<std::size_t>(std::ceil((b - a) / h_target));
    panels = std::max<std::size_t>(2, panels + (panels % 2));
    const double h = (b - a) / static_cast<double>(panels);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < panels; ++i) {
      const double v = integrand(a + static_cast<double>(i) * h);
      (i % 2 ? odd : even) += v;
    }
    total += h / 3.0 * (integrand(a) + 4.0 * odd + 2.0 * even + integrand(b));
  }
  return total;
}

/// Atomic measure of G(t):
///   G1: 1/4 at +-2a sqrt(t), 1/2 at 0
///   G2: 1/6 at +-a sqrt(6t), 2/3 at 0
///   G3: 1/30 at +-a sqrt(12t), 3/10 at +-a sqrt(2t), 1/3 at 0
/// At t = 0 the atoms merge into the identity.
inline ShiftMeasure heat_chernoff_measure(const HeatScheme& s, const HeatParams& p, double t) {
  detail::require_nonnegative_time(t, "heat_chernoff_measure");
  if (t == 0.0) return ShiftMeasure::identity();
  const double a = p.a;
  switch (s.kind) {
    case SchemeKind::G1: {
      const double d = 2.0 * a * std::sqrt(t);
      return ShiftMeasure({{-d, 0.25}, {0.0, 0.5}, {d, 0.25}});
    }
    case SchemeKind::G2: {
      const double d = a * std::sqrt(6.0 * t);
      return ShiftMeasure({{-d, 1.0 / 6.0}, {0.0, 2.0 / 3.0}, {d, 1.0 / 6.0}});
    }
    case SchemeKind::G3: {
      const double far = a * std::sqrt(12.0 * t);
      const double near = a * std::sqrt(2.0 * t);
      return ShiftMeasure(
          {{-far, 1.0 / 30.0}, {-near, 3.0 / 10.0}, {0.0, 1.0 / 3.0}, {near, 3.0 / 10.0}, {far, 1.0 / 30.0}});
    }
  }
  throw DomainError("heat_chernoff_measure: unknown scheme");
}

/// Measure of (G(t/n))^n.
inline ShiftMeasure heat_composed_measure(const HeatScheme& s, const HeatParams& p, double t, long long n,
                                          const MeasureLimits& limits = {}) {
  if (n < 1) throw DomainError("heat_composed_measure: n must be >= 1");
  return measure_power(heat_chernoff_measure(s, p, t / static_cast<double>(n)), n, PowerStrategy::Auto, limits);
}

/// Exact integer weights of (G(t/n))^n for G1/G2 on the lattice p * step,
/// p = -n..n, scaled by normalizer = (c + 2)^n.
struct ExactCoefficientTable {
  SchemeKind kind = SchemeKind::G1;
  long long n = 0;
  std::vector<BigInt> coefficients;  // index p + n
  BigInt normalizer;

  const BigInt& at(long long p) const { return coefficients.at(static_cast<std::size_t>(p + n)); }

  BigInt sum() const {
    BigInt s = 0;
    for (const BigInt& c : coefficients) s += c;
    return s;
  }
};

/// Expands (x^-1 + c + x)^n exactly, c = 2 for G1 and c = 4 for G2.
inline ExactCoefficientTable heat_binomial_coefficients(SchemeKind kind, long long n) {
  if (n < 1) throw DomainError("heat_binomial_coefficients: n must be >= 1");
  if (kind == SchemeKind::G3) throw DomainError("heat_binomial_coefficients: no integer table for g3");
  const int c = kind == SchemeKind::G1 ? 2 : 4;

  std::vector<BigInt> poly{1};  // coefficients of x^(-deg..deg)
  for (long long step = 0; step < n; ++step) {
    std::vector<BigInt> next(poly.size() + 2);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += poly[i] * c;
      next[i + 2] += poly[i];
    }
    poly = std::move(next);
  }

  ExactCoefficientTable table;
  table.kind = kind;
  table.n = n;
  table.coefficients = std::move(poly);
  table.normalizer = boost::multiprecision::pow(BigInt(c + 2), static_cast<unsigned>(n));
  return table;
}

/// Deficit d with G(t) sin = (1 - d) sin, computed without cancellation.
inline double sin_multiplier_deficit(SchemeKind kind, double a, double t) {
  auto half_versine = [](double y) {  // (1 - cos y) / 2
    const double s = std::sin(0.5 * y);
    return s * s;
  };
  switch (kind) {
    case SchemeKind::G1: {  // cos^2(a sqrt t)
      const double s = std::sin(a * std::sqrt(t));
      return s * s;
    }
    case SchemeKind::G2:  // (2 + cos(a sqrt(6t))) / 3
      return 2.0 * half_versine(a * std::sqrt(6.0 * t)) / 3.0;
    case SchemeKind::G3:  // (5 + cos(a sqrt(12t)) + 9 cos(a sqrt(2t))) / 15
      return (2.0 * half_versine(a * std::sqrt(12.0 * t)) + 18.0 * half_versine(a * std::sqrt(2.0 * t))) / 15.0;
  }
  return 0.0;
}

/// Multiplier m_n with ((G(t/n))^n sin)(x) = m_n sin(x):
///   G1: cos(a sqrt(t/n))^(2n)
///   G2: ((2 + cos(a sqrt(6t/n))) / 3)^n
///   G3: ((5 + cos(a sqrt(12t/n)) + 9 cos(a sqrt(2t/n))) / 15)^n
inline double heat_sin_multiplier(SchemeKind kind, const HeatParams& p, double t, long long n) {
  detail::require_nonnegative_time(t, "heat_sin_composed_closed_form");
  if (n < 1) throw DomainError("heat_sin_composed_closed_form: n must be >= 1");
  const double d = sin_multiplier_deficit(kind, p.a, t / static_cast<double>(n));
  const double nn = static_cast<double>(n);
  if (d < 1.0) return std::exp(nn * std::log1p(-d));
  return std::pow(1.0 - d, nn);
}

inline double heat_sin_composed_closed_form(SchemeKind kind, const HeatParams& p, double t, long long n, double x) {
  return heat_sin_multiplier(kind, p, t, n) * std::sin(x);
}

}  // namespace chernoff::heat

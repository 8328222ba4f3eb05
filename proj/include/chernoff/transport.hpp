#pragma once

#include <cmath>
#include <string>

#include "chernoff/error.hpp"
#include "chernoff/initial_condition.hpp"
#include "chernoff/shift_measure.hpp"

// Transport equation u_t = u_x on the line. Its semigroup is translation,
// (e^{tL} u0)(x) = u0(x + t), and both Chernoff families below are single
// shifts, so every composition degree is again a single shift.

namespace chernoff::transport {

/// G(t) f(x) = f(x + t + a t^(k+1)).
struct PowerLawScheme {
  double a = 1.0;
  double k = 1.0;

  PowerLawScheme() = default;
  PowerLawScheme(double a_, double k_) : a(a_), k(k_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("power-law scheme: a must be > 0");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("power-law scheme: k must be > 0");
  }
};

/// G(t) f(x) = f(x + t + t w(1/t)) with w(s) = s^(-gamma). Converges at rate w.
struct SlowScheme {
  double gamma = 0.5;

  SlowScheme() = default;
  explicit SlowScheme(double g) : gamma(g) {
    if (!(g > 0.0 && g < 1.0)) throw DomainError("slow scheme: gamma must lie in (0, 1)");
  }

  double w(double s) const { return std::pow(s, -gamma); }
};

inline void require_nonnegative_time(double t, const char* op) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(op) + ": t must be finite and >= 0");
}

inline double transport_exact(const InitialCondition& u0, double t, double x) {
  require_nonnegative_time(t, "transport_exact");
  return u0(x + t);
}

/// Shift of G(t) for one step.
inline double step_shift(const PowerLawScheme& s, double t) { return t + s.a * std::pow(t, s.k + 1.0); }

inline double step_shift(const SlowScheme& s, double t) {
  if (t == 0.0) return 0.0;
  return t + std::pow(t, 1.0 + s.gamma);  // t * w(1/t) = t^(1+gamma)
}

/// One-atom measure of G(t).
template <class Scheme>
ShiftMeasure chernoff_measure(const Scheme& s, double t) {
  require_nonnegative_time(t, "transport chernoff_measure");
  return ShiftMeasure({{step_shift(s, t), 1.0}});
}

/// Shift of (G(t/n))^n: t + a t^(k+1) / n^k.
inline double transport_power_composed(const PowerLawScheme& s, double t, long long n) {
  require_nonnegative_time(t, "transport_power_composed");
  if (n < 1) throw DomainError("transport_power_composed: n must be >= 1");
  return t + s.a * std::pow(t, s.k + 1.0) / std::pow(static_cast<double>(n), s.k);
}

/// Shift of (G(t/n))^n: t + t w(n/t) = t + t (t/n)^gamma.
inline double transport_slow_composed(const SlowScheme& s, double t, long long n) {
  require_nonnegative_time(t, "transport_slow_composed");
  if (n < 1) throw DomainError("transport_slow_composed: n must be >= 1");
  if (t == 0.0) return 0.0;
  return t + t * s.w(static_cast<double>(n) / t);
}

/// sup_x |sin(x + t + tau) - sin(x + t)| = 2|sin(tau/2)| with tau = a t^(k+1)/n^k.
inline double transport_sin_error_exact(const PowerLawScheme& s, double t, long long n) {
  require_nonnegative_time(t, "transport_sin_error_exact");
  if (n < 1) throw DomainError("transport_sin_error_exact: n must be >= 1");
  // tau is formed directly; subtracting t from the composed shift would cancel.
  const double tau = s.a * std::pow(t, s.k + 1.0) / std::pow(static_cast<double>(n), s.k);
  return 2.0 * std::abs(std::sin(0.5 * tau));
}

/// 2|sin(tau/2)| with tau = t w(n/t) = t^(1+gamma) / n^gamma.
inline double transport_sin_error_slow(const SlowScheme& s, double t, long long n) {
  require_nonnegative_time(t, "transport_sin_error_slow");
  if (n < 1) throw DomainError("transport_sin_error_slow: n must be >= 1");
  if (t == 0.0) return 0.0;
  const double tau = t * s.w(static_cast<double>(n) / t);
  return 2.0 * std::abs(std::sin(0.5 * tau));
}

}  // namespace chernoff::transport

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "chernoff/error.hpp"
#include "chernoff/grid.hpp"
#include "chernoff/heat.hpp"
#include "chernoff/initial_condition.hpp"
#include "chernoff/shift_measure.hpp"
#include "chernoff/transport.hpp"

namespace chernoff {

enum class Equation { Transport, Heat };

inline const char* to_string(Equation e) noexcept { return e == Equation::Transport ? "transport" : "heat"; }

using Scheme = std::variant<transport::PowerLawScheme, transport::SlowScheme, heat::HeatScheme>;

inline bool scheme_fits(Equation e, const Scheme& s) noexcept {
  const bool is_heat = std::holds_alternative<heat::HeatScheme>(s);
  return (e == Equation::Heat) == is_heat;
}

/// One Cauchy problem together with the Chernoff scheme that approximates it.
struct Problem {
  Equation equation = Equation::Transport;
  InitialCondition u0 = InitialCondition::sin();
  Scheme scheme = transport::PowerLawScheme{};
  heat::HeatParams heat{};
  double t = 1.0;
  Grid grid = Grid::periodic_default();

  void validate() const {
    if (!scheme_fits(equation, scheme)) throw DomainError("scheme incompatible with equation");
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("t must be finite and >= 0");
  }
};

/// Measure of (G(t/n))^n for the problem's scheme.
inline ShiftMeasure composed_measure(const Problem& pr, long long n, const MeasureLimits& limits = {}) {
  if (n < 1) throw DomainError("composition degree must be >= 1");
  const double step = pr.t / static_cast<double>(n);
  return std::visit(
      [&](const auto& s) -> ShiftMeasure {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, heat::HeatScheme>) {
          return heat::heat_composed_measure(s, pr.heat, pr.t, n, limits);
        } else {
          return measure_power(transport::chernoff_measure(s, step), n, PowerStrategy::Auto, limits);
        }
      },
      pr.scheme);
}

/// Exact solution e^{tL} u0 at x.
inline double exact_solution(const Problem& pr, double x) {
  if (pr.t == 0.0) return pr.u0(x);
  if (pr.equation == Equation::Transport) return transport::transport_exact(pr.u0, pr.t, x);
  switch (pr.u0.kind()) {
    case InitialKind::Sin:
      return heat::heat_exact_sin(pr.heat, pr.t, x);
    case InitialKind::ExpAbs:
      // The erfc closed form is the a = 1 solution only.
      if (pr.heat.a == 1.0) return heat::heat_exact_expabs(pr.t, x);
      break;
    case InitialKind::Tabulated:
      break;
  }
  return heat::heat_exact_quadrature(pr.u0, pr.heat, pr.t, x);
}

inline std::vector<double> exact_on_grid(const Problem& pr) {
  std::vector<double> out(pr.grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = exact_solution(pr, pr.grid[j]);
  return out;
}

/// Closed-form sup-norm error, when one is known (sin data only).
inline std::optional<double> closed_form_error(const Problem& pr, long long n) {
  if (pr.u0.kind() != InitialKind::Sin) return std::nullopt;
  if (pr.t == 0.0) return 0.0;
  return std::visit(
      [&](const auto& s) -> std::optional<double> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, transport::PowerLawScheme>) {
          return transport::transport_sin_error_exact(s, pr.t, n);
        } else if constexpr (std::is_same_v<S, transport::SlowScheme>) {
          return transport::transport_sin_error_slow(s, pr.t, n);
        } else {
          const double m = heat::heat_sin_multiplier(s.kind, pr.heat, pr.t, n);
          return std::abs(m - std::exp(-pr.heat.a * pr.heat.a * pr.t));
        }
      },
      pr.scheme);
}

/// Empirical order one expects from the theory for this problem; used as the
/// default order for leading-coefficient extraction.
inline double expected_order(const Problem& pr) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, transport::PowerLawScheme>) {
          return s.k;
        } else if constexpr (std::is_same_v<S, transport::SlowScheme>) {
          return s.gamma;
        } else {
          if (pr.u0.kind() != InitialKind::Sin) return 1.0;
          return s.kind == heat::SchemeKind::G1 ? 1.0 : s.kind == heat::SchemeKind::G2 ? 2.0 : 3.0;
        }
      },
      pr.scheme);
}

inline std::string scheme_id(const Scheme& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using S = std::decay_t<decltype(v)>;
        char buf[96];
        if constexpr (std::is_same_v<S, transport::PowerLawScheme>) {
          std::snprintf(buf, sizeof buf, "power:%.17g,%.17g", v.a, v.k);
        } else if constexpr (std::is_same_v<S, transport::SlowScheme>) {
          std::snprintf(buf, sizeof buf, "slow:%.17g", v.gamma);
        } else {
          std::snprintf(buf, sizeof buf, "%s", heat::to_string(v.kind));
        }
        return buf;
      },
      s);
}

struct ErrorRecord {
  long long n = 0;
  double measured_error = 0.0;
  std::optional<double> closed_form_error;
  double t = 0.0;
  std::string scheme;
  std::string initial;
  std::string grid;

  /// Zero errors have no logarithm and are left out of fits.
  bool loggable() const noexcept { return measured_error > 0.0; }

  std::optional<double> abs_gap() const {
    if (!closed_form_error) return std::nullopt;
    return std::abs(measured_error - *closed_form_error);
  }
};

/// Measured error sup_grid |(G(t/n))^n u0 - e^{tL} u0| for each n, with the
/// closed form alongside when one exists.
inline std::vector<ErrorRecord> error_curve(const Problem& pr, const std::vector<long long>& n_values,
                                            const MeasureLimits& limits = {}) {
  pr.validate();
  if (n_values.empty()) throw DomainError("error_curve: no composition degrees given");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw DomainError("error_curve: composition degrees must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1])
      throw DomainError("error_curve: composition degrees must be strictly increasing");
  }

  const std::vector<double> exact = exact_on_grid(pr);
  const std::string sid = scheme_id(pr.scheme);
  const std::string gid = pr.grid.id();

  std::vector<ErrorRecord> records;
  records.reserve(n_values.size());
  for (long long n : n_values) {
    const ShiftMeasure m = composed_measure(pr, n, limits);
    const std::vector<double> approx = apply_on_grid(m, pr.u0, pr.grid);
    ErrorRecord r;
    r.n = n;
    r.measured_error = sup_norm_diff(approx, exact);
    r.closed_form_error = closed_form_error(pr, n);
    r.t = pr.t;
    r.scheme = sid;
    r.initial = pr.u0.name();
    r.grid = gid;
    records.push_back(std::move(r));
  }
  return records;
}

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  long long n_min = 0;
  long long n_max = 0;
  std::size_t points = 0;
};

/// Least squares line through (log10 n, log10 error) over records with
/// n_min <= n <= n_max and a positive error. The slope is minus the
/// empirical order.
inline RegressionFit loglog_fit(const std::vector<ErrorRecord>& records, long long n_min = 4,
                                long long n_max = -1) {
  std::vector<double> xs;
  std::vector<double> ys;
  RegressionFit fit;
  for (const ErrorRecord& r : records) {
    if (r.n < n_min || (n_max >= 0 && r.n > n_max) || !r.loggable()) continue;
    xs.push_back(std::log10(static_cast<double>(r.n)));
    ys.push_back(std::log10(r.measured_error));
    fit.n_min = fit.points == 0 ? r.n : std::min(fit.n_min, r.n);
    fit.n_max = std::max(fit.n_max, r.n);
    ++fit.points;
  }
  if (xs.size() < 3)
    throw InsufficientDataError("loglog_fit: need at least 3 records with positive error in the window, have " +
                                std::to_string(xs.size()));

  const double cnt = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= cnt;
  my /= cnt;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InsufficientDataError("loglog_fit: all records share one n");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ssr += e * e;
    }
    fit.r_squared = std::clamp(1.0 - ssr / syy, 0.0, 1.0);
  }
  return fit;
}

struct LeadingCoefficient {
  double order = 0.0;
  long long n_largest = 0;
  /// n^order * error at the largest n.
  double at_largest_n = 0.0;
  /// Extrapolation from the two largest n assuming n^order * error = C + D/n.
  double richardson = 0.0;
};

inline LeadingCoefficient leading_coefficient(const std::vector<ErrorRecord>& records, double order) {
  if (!(order > 0.0)) throw DomainError("leading_coefficient: order must be > 0");
  if (records.size() < 2) throw InsufficientDataError("leading_coefficient: need at least 2 records");
  const ErrorRecord& r1 = records[records.size() - 2];
  const ErrorRecord& r2 = records.back();
  if (!(r2.n > r1.n)) throw DomainError("leading_coefficient: records must be sorted by n");
  const double n1 = static_cast<double>(r1.n);
  const double n2 = static_cast<double>(r2.n);
  const double c1 = std::pow(n1, order) * r1.measured_error;
  const double c2 = std::pow(n2, order) * r2.measured_error;
  LeadingCoefficient lc;
  lc.order = order;
  lc.n_largest = r2.n;
  lc.at_largest_n = c2;
  lc.richardson = (n2 * c2 - n1 * c1) / (n2 - n1);
  return lc;
}

enum class Trend { Bounded, Growing };

inline const char* to_string(Trend t) noexcept { return t == Trend::Bounded ? "bounded" : "growing"; }

struct ConjectureProbe {
  double order = 1.0;
  double sup_value = 0.0;
  long long attained_at_n = 0;
  Trend trend = Trend::Bounded;
};

/// Probes err(n) <= C / n^order: the sup of n^order * err(n), and whether it
/// is still growing (last three values each up by more than 1%).
inline ConjectureProbe conjecture_bound_probe(const std::vector<ErrorRecord>& records, double order) {
  if (records.size() < 3) throw InsufficientDataError("conjecture_bound_probe: need at least 3 records");
  ConjectureProbe probe;
  probe.order = order;
  std::vector<double> scaled;
  scaled.reserve(records.size());
  for (const ErrorRecord& r : records) {
    const double v = std::pow(static_cast<double>(r.n), order) * r.measured_error;
    scaled.push_back(v);
    if (probe.attained_at_n == 0 || v > probe.sup_value) {
      probe.sup_value = v;
      probe.attained_at_n = r.n;
    }
  }
  const std::size_t k = scaled.size();
  const bool growing = scaled[k - 2] > 1.01 * scaled[k - 3] && scaled[k - 1] > 1.01 * scaled[k - 2];
  probe.trend = growing ? Trend::Growing : Trend::Bounded;
  return probe;
}

/// Geometric sample {lo, 2 lo, 4 lo, ...} clipped to hi, with hi appended if missed.
inline std::vector<long long> geometric_range(long long lo, long long hi) {
  if (lo < 1 || hi < lo) throw DomainError("geometric_range: need 1 <= lo <= hi");
  std::vector<long long> out;
  for (long long n = lo; n <= hi; n *= 2) out.push_back(n);
  if (out.back() != hi) out.push_back(hi);
  return out;
}

inline std::vector<long long> linear_range(long long lo, long long hi) {
  if (lo < 1 || hi < lo) throw DomainError("linear_range: need 1 <= lo <= hi");
  std::vector<long long> out;
  for (long long n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

}  // namespace chernoff

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "chernoff/error.hpp"

namespace chernoff {

enum class InitialKind { Sin, ExpAbs, Tabulated };

/// A named initial condition u0 on the real line.
///
/// Sin and ExpAbs are evaluated analytically. Tabulated data is linearly
/// interpolated between samples and clamped to the end values outside the
/// sampled range, so shifted evaluations are always defined.
class InitialCondition {
 public:
  static InitialCondition sin() { return InitialCondition(InitialKind::Sin); }
  static InitialCondition exp_abs() { return InitialCondition(InitialKind::ExpAbs); }

  /// Samples must have strictly increasing, finite abscissae; at least one point.
  static InitialCondition tabulated(std::vector<double> xs, std::vector<double> ys,
                                    std::string name = "tabulated") {
    if (xs.size() != ys.size()) throw DomainError("tabulated: x and y sizes differ");
    if (xs.empty()) throw DomainError("tabulated: no samples");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
        throw DomainError("tabulated: non-finite sample");
      if (i > 0 && !(xs[i] > xs[i - 1]))
        throw DomainError("tabulated: abscissae must be strictly increasing");
    }
    InitialCondition u(InitialKind::Tabulated);
    u.xs_ = std::move(xs);
    u.ys_ = std::move(ys);
    u.name_ = std::move(name);
    return u;
  }

  /// The constant function `value` as a one-sample table.
  static InitialCondition constant(double value) {
    return tabulated({0.0}, {value}, "constant");
  }

  InitialKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(double x) const {
    if (!std::isfinite(x)) throw DomainError("initial condition evaluated at non-finite x");
    return eval_unchecked(x);
  }

  /// Evaluation without the finiteness check, for inner loops whose
  /// arguments are finite by construction.
  double eval_unchecked(double x) const noexcept {
    switch (kind_) {
      case InitialKind::Sin:
        return std::sin(x);
      case InitialKind::ExpAbs:
        return std::exp(-std::abs(x));
      case InitialKind::Tabulated:
        break;
    }
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + w * (ys_[hi] - ys_[lo]);
  }

  /// sup |u0| over the whole line.
  double sup_abs() const noexcept {
    if (kind_ != InitialKind::Tabulated) return 1.0;
    double m = 0.0;
    for (double y : ys_) m = std::max(m, std::abs(y));
    return m;
  }

  /// Points where u0 fails to be smooth. Quadrature splits its panels here.
  std::vector<double> kinks() const {
    switch (kind_) {
      case InitialKind::Sin:
        return {};
      case InitialKind::ExpAbs:
        return {0.0};
      case InitialKind::Tabulated:
        break;
    }
    return xs_;
  }

  const std::vector<double>& sample_x() const noexcept { return xs_; }
  const std::vector<double>& sample_y() const noexcept { return ys_; }

 private:
  explicit InitialCondition(InitialKind kind)
      : kind_(kind), name_(kind == InitialKind::Sin ? "sin" : kind == InitialKind::ExpAbs ? "exp-abs" : "tabulated") {}

  InitialKind kind_;
  std::string name_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

inline double eval_initial(const InitialCondition& u0, double x) { return u0(x); }

}  // namespace chernoff

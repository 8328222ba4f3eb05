#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chernoff/error.hpp"
#include "chernoff/grid.hpp"
#include "chernoff/initial_condition.hpp"

namespace chernoff {

struct Atom {
  double offset;
  double weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Two offsets are the same atom when |a - b| <= 1e-12 * max(1, |a|).
inline constexpr double kMergeTolerance = 1e-12;

inline bool offsets_coincide(double a, double b) noexcept {
  return std::abs(a - b) <= kMergeTolerance * std::max(1.0, std::abs(a));
}

struct MeasureLimits {
  /// Upper bound on the atom count of any convolution result.
  std::size_t max_atoms = 10'000'000;
};

/// Finite atomic measure sum_i w_i * delta(offset_i), acting on functions by
/// (m f)(x) = sum_i w_i f(x + offset_i). A weighted sum of shift operators;
/// composing such operators convolves their measures.
///
/// Atoms are kept sorted by offset with coincident offsets merged, and all
/// weights are non-negative.
class ShiftMeasure {
 public:
  ShiftMeasure() = default;

  explicit ShiftMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (const Atom& a : atoms_) {
      if (!std::isfinite(a.offset) || !std::isfinite(a.weight))
        throw DomainError("shift measure: non-finite atom");
      if (a.weight < 0.0) throw DomainError("shift measure: negative weight");
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& l, const Atom& r) { return l.offset < r.offset; });
    merge_sorted();
  }

  static ShiftMeasure identity() { return ShiftMeasure({{0.0, 1.0}}); }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  double weight_sum() const noexcept {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.weight;
    return s;
  }

  /// Offsets are all integer multiples of one step (within 1e-9 relative).
  /// Powers of such measures stay O(n) atoms wide.
  bool commensurate() const noexcept {
    double step = 0.0;
    for (const Atom& a : atoms_) {
      const double d = std::abs(a.offset);
      if (d > 0.0 && (step == 0.0 || d < step)) step = d;
    }
    if (step == 0.0) return true;
    for (const Atom& a : atoms_) {
      const double r = a.offset / step;
      if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, std::abs(r))) return false;
    }
    return true;
  }

 private:
  friend ShiftMeasure convolve_measures(const ShiftMeasure&, const ShiftMeasure&, const MeasureLimits&);

  struct SortedTag {};
  ShiftMeasure(SortedTag, std::vector<Atom> sorted) : atoms_(std::move(sorted)) { merge_sorted(); }

  void merge_sorted() {
    std::size_t out = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (out > 0 && offsets_coincide(atoms_[out - 1].offset, atoms_[i].offset)) {
        atoms_[out - 1].weight += atoms_[i].weight;
      } else {
        atoms_[out++] = atoms_[i];
      }
    }
    atoms_.resize(out);
  }

  std::vector<Atom> atoms_;
};

namespace detail {

/// Appends `a`, folding it into the last atom when the offsets coincide.
inline void push_merged(std::vector<Atom>& out, const Atom& a) {
  if (!out.empty() && offsets_coincide(out.back().offset, a.offset)) {
    out.back().weight += a.weight;
  } else {
    out.push_back(a);
  }
}

inline std::vector<Atom> merge_runs(const std::vector<Atom>& l, const std::vector<Atom>& r) {
  std::vector<Atom> out;
  out.reserve(l.size() + r.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < l.size() || j < r.size()) {
    if (j == r.size() || (i < l.size() && l[i].offset <= r[j].offset)) {
      push_merged(out, l[i++]);
    } else {
      push_merged(out, r[j++]);
    }
  }
  return out;
}

}  // namespace detail

/// Measure of the composed operator: offsets add, weights multiply.
///
/// Each atom of the smaller factor shifts a sorted copy of the larger one;
/// these runs are merged pairwise like a binary counter, folding coincident
/// offsets at every merge. Memory stays proportional to the result, so
/// lattice measures (G1, G2) convolve in O(result) space even when the raw
/// pair count is large.
inline ShiftMeasure convolve_measures(const ShiftMeasure& m1, const ShiftMeasure& m2,
                                      const MeasureLimits& limits = {}) {
  const ShiftMeasure& big = m1.size() >= m2.size() ? m1 : m2;
  const ShiftMeasure& small = m1.size() >= m2.size() ? m2 : m1;
  auto check = [&](std::size_t count) {
    if (count > limits.max_atoms)
      throw ResourceError("shift measure convolution would exceed the atom cap of " +
                          std::to_string(limits.max_atoms) + " (reached " + std::to_string(count) + " atoms)");
  };
  check(big.size());

  struct Run {
    int level;
    std::vector<Atom> atoms;
  };
  std::vector<Run> stack;
  for (const Atom& s : small.atoms()) {
    Run run{0, {}};
    run.atoms.reserve(big.size());
    for (const Atom& b : big.atoms()) detail::push_merged(run.atoms, {b.offset + s.offset, b.weight * s.weight});
    while (!stack.empty() && stack.back().level == run.level) {
      run.atoms = detail::merge_runs(stack.back().atoms, run.atoms);
      ++run.level;
      stack.pop_back();
      check(run.atoms.size());
    }
    stack.push_back(std::move(run));
  }
  std::vector<Atom> out;
  while (!stack.empty()) {
    out = out.empty() ? std::move(stack.back().atoms) : detail::merge_runs(stack.back().atoms, out);
    stack.pop_back();
    check(out.size());
  }
  return ShiftMeasure(ShiftMeasure::SortedTag{}, std::move(out));
}

enum class PowerStrategy {
  /// Squaring for commensurate measures, sequential otherwise.
  Auto,
  Squaring,
  /// m^k = m^(k-1) * m. Avoids squaring an O(k^2)-atom measure.
  Sequential,
};

/// n-fold self-convolution of `m`, i.e. the measure of (G)^n when `m` is G's.
inline ShiftMeasure measure_power(const ShiftMeasure& m, long long n, PowerStrategy strategy = PowerStrategy::Auto,
                                  const MeasureLimits& limits = {}) {
  if (n < 1) throw DomainError("measure_power: n must be >= 1");
  if (strategy == PowerStrategy::Auto)
    strategy = m.commensurate() ? PowerStrategy::Squaring : PowerStrategy::Sequential;

  if (strategy == PowerStrategy::Sequential) {
    ShiftMeasure acc = m;
    for (long long k = 1; k < n; ++k) acc = convolve_measures(acc, m, limits);
    return acc;
  }

  ShiftMeasure result;
  bool have_result = false;
  ShiftMeasure base = m;
  for (long long e = n;;) {
    if (e & 1) {
      result = have_result ? convolve_measures(result, base, limits) : base;
      have_result = true;
    }
    e >>= 1;
    if (e == 0) break;
    base = convolve_measures(base, base, limits);
  }
  return result;
}

/// (m f)(x) = sum_i w_i f(x + offset_i).
template <class F>
double apply_measure(const ShiftMeasure& m, const F& f, double x) {
  if (!std::isfinite(x)) throw DomainError("apply_measure: non-finite x");
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.weight * f(x + a.offset);
  return s;
}

namespace detail {

template <class F>
void accumulate_on_grid(const ShiftMeasure& m, const F& f, std::span<const double> xs, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (const Atom& a : m.atoms()) {
    const double w = a.weight;
    const double o = a.offset;
    for (std::size_t j = 0; j < xs.size(); ++j) out[j] += w * f(xs[j] + o);
  }
}

}  // namespace detail

/// Values of m applied to an arbitrary function at every grid point, atom by atom.
template <class F>
std::vector<double> apply_on_grid(const ShiftMeasure& m, const F& f, const Grid& grid) {
  const std::vector<double> xs = grid.points();
  std::vector<double> out(xs.size());
  detail::accumulate_on_grid(m, f, xs, out);
  return out;
}

/// Values of m applied to u0 at every grid point.
///
/// For sin the addition formula reduces the sum to sin x * sum w cos(o) +
/// cos x * sum w sin(o), which costs O(atoms + grid) instead of the product;
/// the two moment sums are compensated. Small measures take the direct sum so
/// the identity measure reproduces u0 bit for bit.
inline std::vector<double> apply_on_grid(const ShiftMeasure& m, const InitialCondition& u0, const Grid& grid) {
  const std::vector<double> xs = grid.points();
  std::vector<double> out(xs.size());
  switch (u0.kind()) {
    case InitialKind::Sin: {
      if (m.size() <= 8) {
        detail::accumulate_on_grid(m, [](double x) { return std::sin(x); }, xs, out);
        break;
      }
      double c = 0.0, cc = 0.0, s = 0.0, sc = 0.0;
      auto add = [](double& sum, double& comp, double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
      };
      for (const Atom& a : m.atoms()) {
        add(c, cc, a.weight * std::cos(a.offset));
        add(s, sc, a.weight * std::sin(a.offset));
      }
      c += cc;
      s += sc;
      for (std::size_t j = 0; j < xs.size(); ++j) out[j] = std::sin(xs[j]) * c + std::cos(xs[j]) * s;
      break;
    }
    case InitialKind::ExpAbs:
      detail::accumulate_on_grid(m, [](double x) { return std::exp(-std::abs(x)); }, xs, out);
      break;
    case InitialKind::Tabulated:
      detail::accumulate_on_grid(m, [&u0](double x) { return u0.eval_unchecked(x); }, xs, out);
      break;
  }
  return out;
}

}  // namespace chernoff

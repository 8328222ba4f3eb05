#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "chernoff/error.hpp"

namespace chernoff {

/// Uniform grid x_j = lower + j*(upper-lower)/(count-1), j = 0..count-1.
class Grid {
 public:
  Grid(double lower, double upper, std::size_t count) : lower_(lower), upper_(upper), count_(count) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
      throw DomainError("grid: need finite lower < upper");
    if (count < 2) throw DomainError("grid: need at least 2 points");
  }

  /// [0, 2pi] with 20001 points, one full period of sin.
  static Grid periodic_default() { return Grid(0.0, 2.0 * std::numbers::pi, 20001); }
  /// [-5, 5] with 20001 points, for decaying data.
  static Grid decaying_default() { return Grid(-5.0, 5.0, 20001); }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  std::size_t size() const noexcept { return count_; }
  double spacing() const noexcept { return (upper_ - lower_) / static_cast<double>(count_ - 1); }

  double operator[](std::size_t j) const noexcept {
    if (j + 1 == count_) return upper_;
    return lower_ + static_cast<double>(j) * spacing();
  }

  std::vector<double> points() const {
    std::vector<double> xs(count_);
    for (std::size_t j = 0; j < count_; ++j) xs[j] = (*this)[j];
    return xs;
  }

  std::string id() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g,%.17g]/%zu", lower_, upper_, count_);
    return buf;
  }

 private:
  double lower_;
  double upper_;
  std::size_t count_;
};

/// max_j |f(x_j) - g(x_j)| over the grid.
template <class F, class G>
double sup_norm_diff(const F& f, const G& g, const Grid& grid) {
  double m = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid[j];
    m = std::max(m, std::abs(f(x) - g(x)));
  }
  return m;
}

/// Same as sup_norm_diff for two sampled vectors over a common grid.
inline double sup_norm_diff(const std::vector<double>& f, const std::vector<double>& g) {
  double m = 0.0;
  const std::size_t n = std::min(f.size(), g.size());
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(f[j] - g[j]));
  return m;
}

}  // namespace chernoff

// Builds (G1(t/n))^n for the heat equation, applies it to sin, and compares
// with the exact solution and the closed-form composition.

#include <cmath>
#include <cstdio>

#include "chernoff/chernoff.hpp"

int main() {
  using namespace chernoff;
  const heat::HeatParams p(1.0);
  const double t = 2.0;
  const auto u0 = InitialCondition::sin();
  const Grid grid = Grid::periodic_default();

  for (long long n : {1, 4, 16, 64, 256}) {
    const ShiftMeasure m = heat::heat_composed_measure({heat::SchemeKind::G1}, p, t, n);
    const double err = sup_norm_diff([&](double x) { return apply_measure(m, u0, x); },
                                     [&](double x) { return heat::heat_exact_sin(p, t, x); }, grid);
    const double closed = std::abs(heat::heat_sin_multiplier(heat::SchemeKind::G1, p, t, n) - std::exp(-t));
    std::printf("n = %4lld  atoms = %5zu  error = %.6e  closed form = %.6e\n", n, m.size(), err, closed);
  }
}

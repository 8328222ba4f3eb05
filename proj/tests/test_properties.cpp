#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "chernoff/analysis.hpp"
#include "chernoff/erfc.hpp"
#include "oracles.hpp"

// Randomized properties. Generators are plain distributions over a seeded
// engine so any failure reproduces; the seed is printed via INFO.

using namespace chernoff;
using Catch::Matchers::WithinAbs;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr int kTrials = 200;

struct Gen {
  std::mt19937_64 rng{kSeed};
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<long long>(v.size()) - 1))];
  }
};

InitialCondition random_initial(Gen& g) {
  switch (g.integer(0, 2)) {
    case 0:
      return InitialCondition::sin();
    case 1:
      return InitialCondition::exp_abs();
    default: {
      std::vector<double> xs;
      std::vector<double> ys;
      double x = g.real(-4.0, -2.0);
      for (int i = 0; i < 6; ++i) {
        xs.push_back(x);
        ys.push_back(g.real(-2.0, 2.0));
        x += g.real(0.2, 1.5);
      }
      return InitialCondition::tabulated(xs, ys);
    }
  }
}

Scheme random_scheme(Gen& g, Equation eq) {
  if (eq == Equation::Heat) return heat::HeatScheme{g.pick(std::vector{heat::SchemeKind::G1, heat::SchemeKind::G2,
                                                                        heat::SchemeKind::G3})};
  if (g.integer(0, 1) == 0) return transport::PowerLawScheme(g.real(0.1, 2.0), g.real(0.25, 3.0));
  return transport::SlowScheme(g.real(0.05, 0.95));
}

Problem random_problem(Gen& g, std::size_t grid_points = 201) {
  Problem pr;
  pr.equation = g.integer(0, 1) == 0 ? Equation::Transport : Equation::Heat;
  pr.u0 = random_initial(g);
  pr.scheme = random_scheme(g, pr.equation);
  pr.heat = heat::HeatParams(g.real(0.3, 1.5));
  pr.t = g.real(0.05, 3.0);
  const double lo = g.real(-6.0, 0.0);
  pr.grid = Grid(lo, lo + g.real(1.0, 8.0), grid_points);
  return pr;
}

void require_same_measure(const ShiftMeasure& a, const ShiftMeasure& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_THAT(a.atoms()[i].offset, WithinAbs(b.atoms()[i].offset, 1e-9 * std::max(1.0, std::abs(b.atoms()[i].offset))));
    CHECK_THAT(a.atoms()[i].weight, WithinAbs(b.atoms()[i].weight, tol));
  }
}

}  // namespace

TEST_CASE("property: composed approximations are contractions", "[property]") {
  Gen g;
  for (int trial = 0; trial < kTrials; ++trial) {
    const Problem pr = random_problem(g);
    const long long n = g.integer(1, 40);
    const ShiftMeasure m = composed_measure(pr, n);
    const double bound = pr.u0.sup_abs();
    const auto approx = apply_on_grid(m, pr.u0, pr.grid);
    INFO("seed " << kSeed << " trial " << trial << " scheme " << scheme_id(pr.scheme) << " n " << n);
    for (double v : approx) CHECK(std::abs(v) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("property: weights are non-negative and sum to 1", "[property]") {
  Gen g;
  for (int trial = 0; trial < kTrials; ++trial) {
    const Problem pr = random_problem(g);
    const long long n = g.integer(1, 60);
    const ShiftMeasure m = composed_measure(pr, n);
    INFO("seed " << kSeed << " trial " << trial << " scheme " << scheme_id(pr.scheme) << " n " << n);
    CHECK_THAT(m.weight_sum(), WithinAbs(1.0, 1e-12));
    for (const Atom& a : m.atoms()) CHECK(a.weight >= 0.0);
    const double c = g.real(-3.0, 3.0);
    const double x = g.real(-5.0, 5.0);
    CHECK_THAT(apply_measure(m, InitialCondition::constant(c), x), WithinAbs(c, 1e-12 * std::max(1.0, std::abs(c))));
  }
}

TEST_CASE("property: convolution powers obey the semigroup law", "[property]") {
  Gen g;
  for (int trial = 0; trial < 60; ++trial) {
    const Problem pr = random_problem(g);
    const double step = g.real(0.01, 0.5);
    const ShiftMeasure base = std::visit(
        [&](const auto& s) -> ShiftMeasure {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, heat::HeatScheme>)
            return heat::heat_chernoff_measure(s, pr.heat, step);
          else
            return transport::chernoff_measure(s, step);
        },
        pr.scheme);
    const long long p = g.integer(1, 12);
    const long long q = g.integer(1, 12);
    INFO("seed " << kSeed << " trial " << trial << " scheme " << scheme_id(pr.scheme) << " p " << p << " q " << q);
    const ShiftMeasure whole = measure_power(base, p + q);
    const ShiftMeasure split = convolve_measures(measure_power(base, p), measure_power(base, q));
    require_same_measure(whole, split, 1e-13);
    // Squaring and sequential products agree.
    require_same_measure(measure_power(base, p + q, PowerStrategy::Squaring),
                         measure_power(base, p + q, PowerStrategy::Sequential), 1e-13);
  }
}

TEST_CASE("property: convolution is commutative and associative", "[property]") {
  Gen g;
  auto random_measure = [&] {
    std::vector<Atom> atoms;
    const long long k = g.integer(1, 6);
    for (long long i = 0; i < k; ++i) atoms.push_back({g.real(-3.0, 3.0), g.real(0.0, 1.0)});
    return ShiftMeasure(atoms);
  };
  for (int trial = 0; trial < kTrials; ++trial) {
    const ShiftMeasure a = random_measure();
    const ShiftMeasure b = random_measure();
    const ShiftMeasure c = random_measure();
    INFO("seed " << kSeed << " trial " << trial);
    require_same_measure(convolve_measures(a, b), convolve_measures(b, a), 1e-14);
    require_same_measure(convolve_measures(convolve_measures(a, b), c), convolve_measures(a, convolve_measures(b, c)),
                         1e-13);
    CHECK_THAT(convolve_measures(a, b).weight_sum(), WithinAbs(a.weight_sum() * b.weight_sum(), 1e-13));
  }
}

TEST_CASE("property: power-law regression recovers slope and intercept", "[property]") {
  Gen g;
  for (int trial = 0; trial < kTrials; ++trial) {
    const double c = std::pow(10.0, g.real(-6.0, 6.0));
    const double q = g.real(0.05, 6.0);
    const long long lo = g.integer(1, 50);
    const long long hi = lo * g.integer(4, 5000);
    const std::vector<long long> ns = g.integer(0, 1) == 0 ? geometric_range(lo, hi) : linear_range(lo, lo + 30);
    std::vector<ErrorRecord> recs;
    for (long long n : ns) {
      ErrorRecord r;
      r.n = n;
      r.measured_error = c * std::pow(static_cast<double>(n), -q);
      recs.push_back(r);
    }
    INFO("seed " << kSeed << " trial " << trial << " C " << c << " q " << q);
    const RegressionFit fit = loglog_fit(recs, lo);
    CHECK_THAT(fit.slope, WithinAbs(-q, 1e-10));
    CHECK_THAT(fit.intercept, WithinAbs(std::log10(c), 1e-10));
    CHECK(fit.r_squared >= 0.0);
    CHECK(fit.r_squared <= 1.0);

    // Rescaling the errors moves only the intercept.
    const double s = std::pow(10.0, g.real(-3.0, 3.0));
    for (ErrorRecord& r : recs) r.measured_error *= s;
    const RegressionFit scaled = loglog_fit(recs, lo);
    CHECK_THAT(scaled.slope, WithinAbs(fit.slope, 1e-10));
    CHECK_THAT(scaled.intercept, WithinAbs(fit.intercept + std::log10(s), 1e-10));
  }
}

TEST_CASE("property: slope is scale invariant on measured curves", "[property]") {
  Gen g;
  for (int trial = 0; trial < 20; ++trial) {
    Problem pr = random_problem(g, 101);
    pr.u0 = InitialCondition::sin();
    auto recs = error_curve(pr, geometric_range(4, 256));
    const RegressionFit fit = loglog_fit(recs);
    const double s = g.real(0.01, 100.0);
    for (ErrorRecord& r : recs) r.measured_error *= s;
    INFO("seed " << kSeed << " trial " << trial << " scheme " << scheme_id(pr.scheme));
    CHECK_THAT(loglog_fit(recs).slope, WithinAbs(fit.slope, 1e-10));
  }
}

TEST_CASE("property: translation semigroup law", "[property]") {
  Gen g;
  for (int trial = 0; trial < kTrials; ++trial) {
    const InitialCondition u0 = random_initial(g);
    const double t = g.real(0.0, 3.0);
    const double s = g.real(0.0, 3.0);
    const double x = g.real(-5.0, 5.0);
    const double shifted_then = transport::transport_exact(u0, t, x + s);
    INFO("seed " << kSeed << " trial " << trial << " " << u0.name());
    CHECK_THAT(transport::transport_exact(u0, t + s, x), WithinAbs(shifted_then, 1e-12));
  }
}

TEST_CASE("property: heat kernel has unit mass", "[property]") {
  Gen g;
  for (int trial = 0; trial < 40; ++trial) {
    const heat::HeatParams p(g.real(0.1, 3.0));
    const double t = std::pow(10.0, g.real(-3.0, 1.0));
    const double w = p.a * std::sqrt(t);
    const double mass = oracle::adaptive_simpson_split([&](double x) { return heat::heat_kernel(p, t, x); }, -20 * w,
                                                       20 * w, 1e-13, 16);
    INFO("seed " << kSeed << " trial " << trial << " a " << p.a << " t " << t);
    CHECK_THAT(mass, WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("property: erfc(-x) = 2 - erfc(x)", "[property]") {
  Gen g;
  for (int trial = 0; trial < 2000; ++trial) {
    const double x = g.real(-30.0, 30.0);
    INFO("x " << x);
    CHECK_THAT(chernoff::erfc(-x), WithinAbs(2.0 - chernoff::erfc(x), 1e-12));
    CHECK(chernoff::erfc(x) >= 0.0);
    CHECK(chernoff::erfc(x) <= 2.0);
  }
}

TEST_CASE("property: heat exact solutions compose in time", "[property]") {
  Gen g;
  for (int trial = 0; trial < 20; ++trial) {
    const double t = g.real(0.1, 1.5);
    const double s = g.real(0.1, 1.5);
    const double x = g.real(-3.0, 3.0);
    const heat::HeatParams p(1.0);
    // Evolve the exp-abs solution at time t for a further time s.
    const double w = std::sqrt(s);
    const double evolved = oracle::adaptive_simpson_split(
        [&](double y) { return heat::heat_kernel(p, s, x - y) * heat::heat_exact_expabs(t, y); }, x - 14 * w,
        x + 14 * w, 1e-12, 32);
    INFO("seed " << kSeed << " trial " << trial);
    CHECK_THAT(heat::heat_exact_expabs(t + s, x), WithinAbs(evolved, 1e-9));
  }
}

TEST_CASE("property: measured and closed-form errors agree within 2h", "[property]") {
  Gen g;
  for (int trial = 0; trial < 40; ++trial) {
    Problem pr = random_problem(g, g.integer(51, 2001));
    pr.u0 = InitialCondition::sin();
    const double h = pr.grid.spacing();
    const std::vector<long long> ns{1, g.integer(2, 10), g.integer(11, 60)};
    for (const ErrorRecord& r : error_curve(pr, ns)) {
      REQUIRE(r.closed_form_error);
      INFO("seed " << kSeed << " trial " << trial << " scheme " << scheme_id(pr.scheme) << " n " << r.n);
      CHECK(r.measured_error <= *r.closed_form_error + 1e-12);
      // The grid only sees the sup if it spans a period.
      if (pr.grid.upper() - pr.grid.lower() >= 2 * std::numbers::pi) CHECK(*r.abs_gap() <= 2 * h);
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "chernoff/analysis.hpp"

using namespace chernoff;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<ErrorRecord> synthetic(const std::vector<long long>& ns, double c, double q) {
  std::vector<ErrorRecord> out;
  for (long long n : ns) {
    ErrorRecord r;
    r.n = n;
    r.measured_error = c / std::pow(static_cast<double>(n), q);
    out.push_back(r);
  }
  return out;
}

Problem transport_sin(double a, double k, double t) {
  Problem pr;
  pr.equation = Equation::Transport;
  pr.u0 = InitialCondition::sin();
  pr.scheme = transport::PowerLawScheme(a, k);
  pr.t = t;
  return pr;
}

Problem heat_sin(heat::SchemeKind kind, double t, Grid grid = Grid::periodic_default()) {
  Problem pr;
  pr.equation = Equation::Heat;
  pr.u0 = InitialCondition::sin();
  pr.scheme = heat::HeatScheme{kind};
  pr.heat = heat::HeatParams(1.0);
  pr.t = t;
  pr.grid = grid;
  return pr;
}

}  // namespace

TEST_CASE("error_curve: transport sin follows 2|sin(1/(2n))|", "[analysis]") {
  const auto recs = error_curve(transport_sin(1.0, 1.0, 1.0), linear_range(1, 100));
  REQUIRE(recs.size() == 100);
  for (const ErrorRecord& r : recs) {
    const double law = 2.0 * std::abs(std::sin(1.0 / (2.0 * r.n)));
    CHECK(std::abs(r.measured_error - law) <= 1e-3);
    REQUIRE(r.closed_form_error);
    CHECK_THAT(*r.closed_form_error, WithinAbs(law, 1e-15));
    CHECK(*r.abs_gap() <= 2 * Grid::periodic_default().spacing());
    CHECK(r.scheme == "power:1,1");
    CHECK(r.initial == "sin");
    CHECK(r.t == 1.0);
  }
}

TEST_CASE("error_curve: heat sin G1 follows cos(sqrt(2/n))^(2n) - e^-2", "[analysis]") {
  const Problem pr = heat_sin(heat::SchemeKind::G1, 2.0, Grid(0.0, 2 * std::numbers::pi, 2001));
  std::vector<long long> ns;
  for (long long n = 1; n <= 200; n += 7) ns.push_back(n);
  for (const ErrorRecord& r : error_curve(pr, ns)) {
    const double law = std::abs(std::pow(std::cos(std::sqrt(2.0 / r.n)), 2 * r.n) - std::exp(-2.0));
    CHECK(std::abs(r.measured_error - law) <= 1e-3);
    CHECK(std::abs(*r.closed_form_error - law) <= 1e-14);
  }
}

TEST_CASE("error_curve: t = 0 gives zero, non-loggable records", "[analysis]") {
  for (Problem pr : {transport_sin(1.0, 1.0, 0.0), heat_sin(heat::SchemeKind::G3, 0.0, Grid(0.0, 1.0, 11))}) {
    const auto recs = error_curve(pr, {1, 2, 3});
    REQUIRE(recs.size() == 3);
    for (const ErrorRecord& r : recs) {
      CHECK(r.measured_error == 0.0);
      CHECK_FALSE(r.loggable());
    }
    CHECK_THROWS_AS(loglog_fit(recs, 1), InsufficientDataError);
  }
}

TEST_CASE("error_curve: argument checks", "[analysis]") {
  const Problem pr = transport_sin(1.0, 1.0, 1.0);
  CHECK_THROWS_AS(error_curve(pr, {}), DomainError);
  CHECK_THROWS_AS(error_curve(pr, {2, 2}), DomainError);
  CHECK_THROWS_AS(error_curve(pr, {0, 1}), DomainError);
  Problem bad = pr;
  bad.scheme = heat::HeatScheme{heat::SchemeKind::G1};
  CHECK_THROWS_AS(error_curve(bad, {1}), DomainError);

  const Problem heavy = heat_sin(heat::SchemeKind::G3, 1.0, Grid(0.0, 1.0, 11));
  MeasureLimits tiny;
  tiny.max_atoms = 50;
  CHECK_THROWS_AS(error_curve(heavy, {1, 64}, tiny), ResourceError);
}

TEST_CASE("exact_solution dispatch", "[analysis]") {
  Problem pr = heat_sin(heat::SchemeKind::G1, 1.0);
  CHECK_THAT(exact_solution(pr, std::numbers::pi / 2), WithinAbs(std::exp(-1.0), 1e-15));
  pr.u0 = InitialCondition::exp_abs();
  CHECK_THAT(exact_solution(pr, 0.0), WithinAbs(0.4275836, 1e-7));
  pr.heat = heat::HeatParams(0.5);
  // a != 1: Poisson integral; matches the a = 1 formula at time a^2 t.
  CHECK_THAT(exact_solution(pr, 0.3), WithinAbs(heat::heat_exact_expabs(0.25, 0.3), 1e-9));
  pr.t = 0.0;
  CHECK(exact_solution(pr, 0.3) == std::exp(-0.3));
}

TEST_CASE("loglog_fit: exact power law", "[analysis]") {
  const auto recs = synthetic(geometric_range(1, 1024), 5.0, 2.0);
  const RegressionFit fit = loglog_fit(recs, 1);
  CHECK_THAT(fit.slope, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(fit.intercept, WithinAbs(std::log10(5.0), 1e-12));
  CHECK_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
  CHECK(fit.n_min == 1);
  CHECK(fit.n_max == 1024);

  const RegressionFit def = loglog_fit(recs);
  CHECK(def.n_min == 4);
  CHECK(def.points == 9);
  const RegressionFit win = loglog_fit(recs, 8, 64);
  CHECK(win.n_min == 8);
  CHECK(win.n_max == 64);
  CHECK(win.points == 4);
}

TEST_CASE("loglog_fit: zero errors are excluded, not clamped", "[analysis]") {
  auto recs = synthetic({4, 8, 16, 32}, 3.0, 1.0);
  recs[1].measured_error = 0.0;
  const RegressionFit fit = loglog_fit(recs);
  CHECK(fit.points == 3);
  CHECK_THAT(fit.slope, WithinAbs(-1.0, 1e-12));
  CHECK_THROWS_AS(loglog_fit(synthetic({4, 8}, 1.0, 1.0)), InsufficientDataError);
  CHECK_THROWS_AS(loglog_fit(synthetic({1, 2, 3}, 1.0, 1.0)), InsufficientDataError);
}

TEST_CASE("loglog_fit: transport curves", "[analysis]") {
  const auto recs = error_curve(transport_sin(1.0, 1.0, 1.0), linear_range(1, 100));
  const RegressionFit fit = loglog_fit(recs, 4);
  CHECK(fit.slope >= -1.02);
  CHECK(fit.slope <= -0.98);

  Problem slow = transport_sin(1.0, 1.0, 1.0);
  slow.scheme = transport::SlowScheme(0.5);
  const RegressionFit sf = loglog_fit(error_curve(slow, geometric_range(16, 4096)), 16);
  CHECK(sf.slope >= -0.55);
  CHECK(sf.slope <= -0.45);
}

TEST_CASE("leading_coefficient", "[analysis]") {
  const auto exact = leading_coefficient(synthetic({10, 20, 40}, 5.0, 2.0), 2.0);
  CHECK_THAT(exact.at_largest_n, WithinRel(5.0, 1e-14));
  CHECK_THAT(exact.richardson, WithinRel(5.0, 1e-14));
  CHECK(exact.n_largest == 40);

  const auto tr = leading_coefficient(error_curve(transport_sin(1.0, 1.0, 1.0), {500, 1000}), 1.0);
  CHECK_THAT(tr.at_largest_n, WithinAbs(1.0, 1e-3));
  CHECK_THAT(tr.richardson, WithinAbs(1.0, 1e-3));

  // Heat G1 from its closed-form error.
  const Problem pr = heat_sin(heat::SchemeKind::G1, 2.0);
  std::vector<ErrorRecord> recs;
  for (long long n : {2048LL, 4096LL}) {
    ErrorRecord r;
    r.n = n;
    r.measured_error = *closed_form_error(pr, n);
    recs.push_back(r);
  }
  const auto g1 = leading_coefficient(recs, 1.0);
  const double limit = std::exp(-2.0) * 2.0 / 3.0;
  CHECK_THAT(g1.richardson, WithinRel(limit, 1e-5));
  CHECK_THAT(g1.at_largest_n, WithinRel(limit, 1e-3));

  CHECK_THROWS_AS(leading_coefficient(synthetic({4}, 1.0, 1.0), 1.0), InsufficientDataError);
  CHECK_THROWS_AS(leading_coefficient(synthetic({4, 8}, 1.0, 1.0), 0.0), DomainError);
}

TEST_CASE("conjecture_bound_probe", "[analysis]") {
  const auto tr = conjecture_bound_probe(error_curve(transport_sin(1.0, 1.0, 1.0), linear_range(1, 100)), 1.0);
  CHECK(tr.trend == Trend::Bounded);
  CHECK_THAT(tr.sup_value, WithinAbs(1.0, 1e-3));

  Problem slow = transport_sin(1.0, 1.0, 1.0);
  slow.scheme = transport::SlowScheme(0.5);
  const auto sp = conjecture_bound_probe(error_curve(slow, geometric_range(16, 4096)), 1.0);
  CHECK(sp.trend == Trend::Growing);
  CHECK(sp.attained_at_n == 4096);

  const Problem g2 = heat_sin(heat::SchemeKind::G2, 2.0, Grid(0.0, 2 * std::numbers::pi, 2001));
  CHECK(conjecture_bound_probe(error_curve(g2, geometric_range(1, 128)), 2.0).trend == Trend::Bounded);

  // Growth of 1% or less is not growth.
  auto flat = synthetic({1, 2, 3, 4}, 1.0, 1.0);
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i].measured_error *= std::pow(1.009, static_cast<double>(i));
  CHECK(conjecture_bound_probe(flat, 1.0).trend == Trend::Bounded);
  CHECK_THROWS_AS(conjecture_bound_probe(synthetic({1, 2}, 1.0, 1.0), 1.0), InsufficientDataError);
}

TEST_CASE("probe agrees with the fitted slope", "[analysis]") {
  struct Case {
    Problem pr;
    std::vector<long long> ns;
    double q;
  };
  const Grid coarse(0.0, 2 * std::numbers::pi, 2001);
  Problem slow_half = transport_sin(1.0, 1.0, 1.0);
  slow_half.scheme = transport::SlowScheme(0.5);
  Problem slow_sixth = slow_half;
  slow_sixth.scheme = transport::SlowScheme(1.0 / 6.0);
  const std::vector<Case> cases{
      {transport_sin(1.0, 1.0, 1.0), geometric_range(4, 1024), 1.0},
      {transport_sin(0.5, 2.0, 1.0), geometric_range(4, 1024), 2.0},
      {transport_sin(0.5, 2.0, 1.0), geometric_range(4, 1024), 3.0},
      {slow_half, geometric_range(16, 4096), 1.0},
      {slow_sixth, geometric_range(16, 4096), 0.1},
      {heat_sin(heat::SchemeKind::G1, 2.0, coarse), geometric_range(4, 128), 1.0},
      {heat_sin(heat::SchemeKind::G1, 2.0, coarse), geometric_range(4, 128), 2.0},
      {heat_sin(heat::SchemeKind::G2, 2.0, coarse), geometric_range(4, 128), 2.0},
      {heat_sin(heat::SchemeKind::G3, 2.0, coarse), geometric_range(4, 64), 3.0},
  };
  for (const Case& c : cases) {
    const auto recs = error_curve(c.pr, c.ns);
    const RegressionFit fit = loglog_fit(recs, c.ns.front());
    const bool bounded = conjecture_bound_probe(recs, c.q).trend == Trend::Bounded;
    INFO(scheme_id(c.pr.scheme) << " q = " << c.q << " slope = " << fit.slope);
    CHECK(bounded == (fit.slope <= -c.q + 0.02));
  }
}

TEST_CASE("ranges", "[analysis]") {
  CHECK(geometric_range(1, 64) == std::vector<long long>{1, 2, 4, 8, 16, 32, 64});
  CHECK(geometric_range(16, 100) == std::vector<long long>{16, 32, 64, 100});
  CHECK(linear_range(3, 5) == std::vector<long long>{3, 4, 5});
  CHECK_THROWS_AS(geometric_range(0, 4), DomainError);
  CHECK_THROWS_AS(linear_range(5, 4), DomainError);
}

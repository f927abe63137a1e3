#include <doctest.h>

#include <cmath>

#include "lslab/blowup.hpp"
#include "lslab/closed_form.hpp"
#include "lslab/exponents.hpp"
#include "lslab/parse.hpp"

using namespace lslab;

TEST_CASE("power-law fit recovers exact exponents") {
  std::vector<FitPoint> pts;
  for (int k = 3; k <= 8; ++k) {
    double eps = std::pow(2.0, -k);
    pts.push_back({eps, 3.0 * eps * eps, 0.0});
  }
  ScalingFit fit = fit_power_law(pts);
  CHECK(std::abs(fit.exponent - 2.0) < 1e-12);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(fit.log_constant) == doctest::Approx(3.0).epsilon(1e-10));

  std::vector<FitPoint> lin;
  for (int k = 3; k <= 7; ++k) {
    double eps = std::pow(2.0, -k);
    lin.push_back({eps, 2.0 * M_PI * M_PI * eps, 0.0});
  }
  CHECK(std::abs(fit_power_law(lin).exponent - 1.0) < 1e-10);
}

TEST_CASE("power-law fit on closed-form J data") {
  std::vector<FitPoint> pts;
  for (int k = 3; k <= 8; ++k) {
    double eps = std::pow(2.0, -k);
    pts.push_back({eps, monomial_J_exact_n2(1, 1, eps), 0.0});
  }
  double slope = fit_power_law(pts).exponent;
  CHECK(slope >= 1.98);
  CHECK(slope <= 2.02);
}

TEST_CASE("power-law fit input validation") {
  std::vector<FitPoint> two = {{0.5, 1.0, 0}, {0.25, 0.5, 0}};
  CHECK_THROWS_AS(static_cast<void>(fit_power_law(two)), LabError);

  std::vector<FitPoint> with_bad = {
      {0.5, 1.0, 0}, {0.25, 0.5, 0}, {0.125, -1.0, 0}, {0.0625, 0.125, 0}};
  ScalingFit fit = fit_power_law(with_bad);  // the nonpositive point is dropped
  CHECK(fit.points.size() == 3);

  std::vector<FitPoint> mostly_bad = {
      {0.5, -1.0, 0}, {0.25, 0.5, 0}, {0.125, 0.0, 0}, {0.0625, 0.125, 0}};
  CHECK_THROWS_WITH_AS(static_cast<void>(fit_power_law(mostly_bad)),
                       doctest::Contains("positive values"), LabError);
}

TEST_CASE("curve probe: monomial families hit 1 - 1/(k1+k2)") {
  auto grid = default_probe_grid();
  struct Case {
    int k, l;
  } cases[] = {{1, 1}, {2, 3}, {1, 3}, {4, 4}, {2, 6}};
  for (auto c : cases) {
    SparsePolynomial f = make_monomial(2, {c.k, c.l});
    LojasiewiczEstimate est = lojasiewicz_curve_probe(f, 4, grid);
    double expect = 1.0 - 1.0 / (c.k + c.l);
    CHECK(std::abs(est.alpha - expect) <= 0.02);
    CHECK(est.best_direction == MultiIndex{1, 1});
  }
}

TEST_CASE("curve probe: binomial families hit 1 - 1/q") {
  auto grid = default_probe_grid();
  SparsePolynomial cusp = cusp_polynomial();
  LojasiewiczEstimate est = lojasiewicz_curve_probe(cusp, 6, grid);
  CHECK(std::abs(est.alpha - 2.0 / 3.0) <= 0.02);

  SparsePolynomial f25 = parse_polynomial_shorthand("z1^2 - z2^5");
  LojasiewiczEstimate e25 = lojasiewicz_curve_probe(f25, 6, grid);
  CHECK(std::abs(e25.alpha - 0.8) <= 0.02);
}

TEST_CASE("curve probe: smooth zero set gives alpha 0") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  LojasiewiczEstimate est = lojasiewicz_curve_probe(z1, 4, default_probe_grid());
  CHECK(est.alpha == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("curve probe: scale invariance of the fitted exponent") {
  auto grid = default_probe_grid();
  SparsePolynomial f = parse_polynomial_shorthand("z1^2 z2^3");
  double a1 = lojasiewicz_curve_probe(f, 4, grid).alpha;
  double a2 = lojasiewicz_curve_probe(f.scaled(Complex(37.0, 0.0)), 4, grid).alpha;
  CHECK(std::abs(a1 - a2) < 1e-3);
}

TEST_CASE("curve probe: degenerate directions are skipped, all-degenerate fails") {
  auto grid = default_probe_grid();
  SparsePolynomial diag = parse_polynomial_shorthand("z1 - z2");
  CHECK_THROWS_AS(static_cast<void>(lojasiewicz_curve_probe(diag, 1, grid)), LabError);
  // with a_max = 2 the diagonal directions (1,1) and (2,2) are skipped
  LojasiewiczEstimate est = lojasiewicz_curve_probe(diag, 2, grid);
  CHECK(est.per_direction.size() == 2);
  CHECK(est.alpha == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("exponent report mapping") {
  ExponentReport r = exponent_report(0.8);
  CHECK(r.gamma == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.tau == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(r.cse_lower == r.gamma);

  ExponentReport r0 = exponent_report(0.0);
  CHECK(r0.gamma == 1.0);
  CHECK(r0.tau == 2.0);
  CHECK(r0.cse_lower == 1.0);

  ExponentReport rc = exponent_report(2.0 / 3.0);
  CHECK(rc.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rc.tau == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // structural identities
  for (double a : {0.0, 0.25, 0.5, 2.0 / 3.0, 0.8, 0.95}) {
    ExponentReport rr = exponent_report(a);
    CHECK(rr.tau == 2.0 * rr.gamma);
    CHECK(rr.gamma + a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rr.cse_lower == rr.gamma);
  }
  CHECK_THROWS_AS(exponent_report(1.0), LabError);
  CHECK_THROWS_AS(exponent_report(-0.1), LabError);
}

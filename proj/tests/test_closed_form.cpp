#include <doctest.h>

#include <cmath>

#include "lslab/closed_form.hpp"
#include "oracles.hpp"

using namespace lslab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("level-set energy integral I for n=2 monomials") {
  CHECK(monomial_I_exact_n2(1, 1, 0.1) ==
        doctest::Approx(2.0 * kPi * kPi * 0.1 * (0.99 + 0.99)).epsilon(1e-15));
  CHECK(monomial_I_exact_n2(1, 1, 0.1) == doctest::Approx(3.90837).epsilon(2e-5));
  CHECK(monomial_I_exact_n2(3, 4, 1.0) == 0.0);
  double eps = 1e-9;
  CHECK(monomial_I_exact_n2(2, 3, eps) / eps ==
        doctest::Approx(2.0 * kPi * kPi * 5.0).epsilon(1e-5));
  CHECK_THROWS_AS(monomial_I_exact_n2(1, 1, 0.0), LabError);
  CHECK_THROWS_AS(monomial_I_exact_n2(1, 1, 1.5), LabError);
}

TEST_CASE("sublevel energy J for n=2 monomials") {
  double j = monomial_J_exact_n2(1, 1, 0.1);
  CHECK(j == doctest::Approx(39.4784176 * 0.004975).epsilon(1e-8));
  CHECK(j == doctest::Approx(0.196405).epsilon(1e-5));

  // At eps = 1 the sublevel set is the whole bidisc and J equals the plain
  // gradient energy, cross-checked by quadrature.
  double full = monomial_J_exact_n2(1, 1, 1.0);
  CHECK(full == doctest::Approx(kPi * kPi).epsilon(1e-14));
  CHECK(full == doctest::Approx(oracles::sublevel_energy_quad(1, 1, 1.0)).epsilon(1e-9));

  double eps = 1e-8;
  CHECK(monomial_J_exact_n2(2, 3, eps) / (eps * eps) ==
        doctest::Approx(5.0 * kPi * kPi).epsilon(1e-5));
}

TEST_CASE("J against the quadrature oracle away from the asymptotic regime") {
  for (double eps : {0.05, 0.1, 0.3}) {
    CHECK(monomial_J_exact_n2(1, 1, eps) ==
          doctest::Approx(oracles::sublevel_energy_quad(1, 1, eps)).epsilon(1e-8));
    CHECK(monomial_J_exact_n2(2, 3, eps) ==
          doctest::Approx(oracles::sublevel_energy_quad(2, 3, eps)).epsilon(1e-8));
  }
}

TEST_CASE("coarea derivative identity dJ/deps = I") {
  double h = 1e-4;
  for (int pair = 0; pair < 2; ++pair) {
    int k = pair == 0 ? 1 : 2, l = pair == 0 ? 1 : 3;
    for (double eps : {0.05, 0.1, 0.2}) {
      double diff =
          (monomial_J_exact_n2(k, l, eps + h) - monomial_J_exact_n2(k, l, eps - h)) / (2.0 * h);
      CHECK(diff == doctest::Approx(monomial_I_exact_n2(k, l, eps)).epsilon(1e-3));
    }
  }
}

TEST_CASE("I and J shape: nonnegative, vanish at 0, I increasing for small eps") {
  double prev_i = 0.0, prev_j = 0.0;
  for (double eps = 1e-4; eps <= 0.01; eps *= 2.0) {
    double i = monomial_I_exact_n2(2, 3, eps), j = monomial_J_exact_n2(2, 3, eps);
    CHECK(i >= 0.0);
    CHECK(j >= 0.0);
    CHECK(i > prev_i);
    CHECK(j > prev_j);
    prev_i = i;
    prev_j = j;
  }
  CHECK(monomial_I_exact_n2(2, 3, 1e-12) < 1e-9);
  CHECK(monomial_J_exact_n2(2, 3, 1e-12) < 1e-9);
}

TEST_CASE("leading coefficient of I(eps) ~ c eps") {
  CHECK(monomial_I_leading({{1, 1}}) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-15));
  // After stripping the inactive coordinate of f = z1 in C^2, the caller
  // multiplies by pi per removed disc: 2*pi * pi = 2*pi^2, the exact area
  // growth of {|z1| = eps} x disc.
  CHECK(monomial_I_leading({{1}}) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(monomial_I_leading({{1}}) * kPi == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  CHECK(monomial_I_leading({{1, 1, 1}}) == doctest::Approx(6.0 * std::pow(kPi, 3)).epsilon(1e-15));
  CHECK(monomial_I_leading({{1, 1, 1}}) == doctest::Approx(186.0).epsilon(1e-3));
  CHECK_THROWS_AS(monomial_I_leading({{1, 0}}), LabError);
}

TEST_CASE("constrained moment integral: limit form") {
  double a0[] = {0.0, 0.0};
  CHECK(constrained_moment_limit(a0) == 1.0);
  double a1[] = {0.5, 1.0};
  CHECK(constrained_moment_limit(a1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  double a2[] = {1.0, 1.0, 1.0};
  CHECK(constrained_moment_limit(a2) == doctest::Approx(0.125).epsilon(1e-15));
  double bad[] = {-1.0};
  CHECK_THROWS_AS(constrained_moment_limit(bad), LabError);
}

TEST_CASE("constrained moment integral: finite eps") {
  double a0[] = {0.0};
  CHECK(constrained_moment_finite(a0, 0.25) == doctest::Approx(0.75).epsilon(1e-12));

  double a1[] = {0.0, 0.0};
  double v = constrained_moment_finite(a1, 0.1);
  CHECK(v == doctest::Approx(1.0 - 0.1 + 0.1 * std::log(0.1)).epsilon(1e-12));
  CHECK(v == doctest::Approx(0.669741).epsilon(1e-5));
  CHECK(v == doctest::Approx(oracles::constrained_moment_quad(0.0, 0.0, 0.1)).epsilon(1e-8));

  double a2[] = {0.5, 1.0};
  CHECK(constrained_moment_finite(a2, 0.2) ==
        doctest::Approx(oracles::constrained_moment_quad(0.5, 1.0, 0.2)).epsilon(1e-8));

  // monotone approach to the limit from below
  double prev = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    double cur = constrained_moment_finite(a2, eps);
    CHECK(cur > prev);
    CHECK(cur < 1.0 / 3.0 + 1e-12);
    prev = cur;
  }
  CHECK(1.0 / 3.0 - constrained_moment_finite(a2, 1e-6) < 1e-3);

  double a3[] = {0.5, 0.5, 2.0};
  CHECK(constrained_moment_finite(a3, 1e-8) ==
        doctest::Approx(constrained_moment_limit(a3)).epsilon(1e-6));
  CHECK_THROWS_AS(constrained_moment_finite(a2, 0.0), LabError);
}

TEST_CASE("fiber volume of {z1 z2 = w}") {
  CHECK(fiber_volume_z1z2_exact(0.0) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(fiber_volume_z1z2_exact(0.5) == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(fiber_volume_z1z2_exact(0.5) == doctest::Approx(4.71239).epsilon(1e-5));
  CHECK(fiber_volume_z1z2_exact(0.999999) < 2e-5);
  CHECK_THROWS_AS(fiber_volume_z1z2_exact(1.0), LabError);
}

TEST_CASE("sublevel volume closed form vs quadrature oracle") {
  double v = monomial_sublevel_volume_exact(1, 1, 0.1);
  CHECK(v == doctest::Approx(kPi * kPi * 0.01 * (1.0 - 2.0 * std::log(0.1))).epsilon(1e-13));
  CHECK(v == doctest::Approx(0.5532081).epsilon(1e-6));
  CHECK(v == doctest::Approx(oracles::sublevel_volume_quad(1, 1, 0.1)).epsilon(1e-8));

  CHECK(monomial_sublevel_volume_exact(1, 1, 1.0) == doctest::Approx(kPi * kPi).epsilon(1e-13));

  double v21 = monomial_sublevel_volume_exact(2, 1, 0.1);
  CHECK(v21 == doctest::Approx(2.0 * kPi * kPi * 0.095).epsilon(1e-12));
  CHECK(v21 == doctest::Approx(1.8752248).epsilon(1e-6));
  CHECK(v21 == doctest::Approx(oracles::sublevel_volume_quad(2, 1, 0.1)).epsilon(1e-8));

  CHECK(monomial_sublevel_volume_exact(3, 2, 0.17) ==
        doctest::Approx(oracles::sublevel_volume_quad(3, 2, 0.17)).epsilon(1e-8));
}

TEST_CASE("graph-volume integrand") {
  MonomialSpec a11{{1, 1}};
  Complex z_prime[] = {Complex(0.8, 0.0)};
  double v = graph_volume_integrand(a11, Complex(0.5, 0.0), z_prime);
  CHECK(v == doctest::Approx(1.0 + 0.390625 / 0.64).epsilon(1e-12));
  CHECK(v == doctest::Approx(1.61035).epsilon(1e-5));

  Complex at_boundary[] = {Complex(0.5, 0.0)};
  CHECK_THROWS_AS(
      static_cast<void>(graph_volume_integrand(a11, Complex(0.5, 0.0), at_boundary)),
      LabError);

  Complex z2[] = {Complex(0.6, 0.2)};
  CHECK(graph_volume_integrand(a11, Complex(1e-12, 0.0), z2) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Integrating the integrand over the admissible annulus reproduces the
  // exact fiber volume.
  for (double w : {0.3, 0.5, 0.7}) {
    CHECK(oracles::fiber_volume_quad(w) ==
          doctest::Approx(fiber_volume_z1z2_exact(w)).epsilon(1e-4));
  }
}

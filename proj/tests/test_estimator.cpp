#include <doctest.h>

#include <cmath>

#include "lslab/closed_form.hpp"
#include "lslab/estimator.hpp"
#include "lslab/parse.hpp"
#include "oracles.hpp"

using namespace lslab;

namespace {

constexpr double kPi = std::numbers::pi;

SamplerConfig cfg_for(const SparsePolynomial& f, long long n, std::uint64_t seed = 7,
                      Sampling s = Sampling::Uniform) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.n_samples = n;
  cfg.n_workers = 2;
  cfg.domain = PolyDomain::unit_polydisc(f.dimension());
  cfg.sampling = s;
  return cfg;
}

void check_close(const EstimateResult& est, double expect, double rel_cap) {
  double err = std::abs(est.value - expect);
  CHECK(err <= std::max(3.0 * est.std_error, rel_cap * std::abs(expect)));
}

}  // namespace

TEST_CASE("sublevel volume: cylinder, monomial and full-domain cases") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  EstimateResult est = mc_sublevel_volume(z1, 0.5, cfg_for(z1, 1'000'000));
  CHECK(std::abs(est.value - kPi * kPi * 0.25) <= 3.0 * est.std_error);
  CHECK(est.n_used == est.n_used + 0);
  CHECK(est.n_used + est.n_rejected == 1'000'000);

  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  EstimateResult est2 = mc_sublevel_volume(f, 0.1, cfg_for(f, 2'000'000));
  CHECK(std::abs(est2.value - monomial_sublevel_volume_exact(1, 1, 0.1)) <=
        3.0 * est2.std_error);

  // eps above sup |f|: every sample accepted, exact volume, zero error
  EstimateResult full = mc_sublevel_volume(f, 2.0, cfg_for(f, 10'000));
  CHECK(full.value == doctest::Approx(kPi * kPi).epsilon(1e-12));
  CHECK(full.std_error == 0.0);
  CHECK(full.n_hits == 10'000);
}

TEST_CASE("thin-shell surface integrals") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  ShellSpec shell{0.1, 0.1 / 20.0};
  double area = 2.0 * kPi * 0.1 * kPi;  // circle x disc

  EstimateResult unit =
      mc_shell_surface_integral(z1, shell, WeightKind::Unit, cfg_for(z1, 1'000'000));
  check_close(unit, area, 0.01);
  CHECK(unit.value == doctest::Approx(1.97392).epsilon(0.01));

  EstimateResult grad =
      mc_shell_surface_integral(z1, shell, WeightKind::GradF, cfg_for(z1, 1'000'000));
  CHECK(grad.value == doctest::Approx(unit.value).epsilon(1e-12));  // |grad f| == 1

  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  EstimateResult i_est = mc_shell_surface_integral(f, ShellSpec{0.1, 0.1 / 40.0},
                                                   WeightKind::GradF,
                                                   cfg_for(f, 2'000'000, 7, Sampling::Auto));
  check_close(i_est, monomial_I_exact_n2(1, 1, 0.1), 0.02);

  CustomWeight one = [](std::span<const Complex>) { return 1.0; };
  EstimateResult custom = mc_shell_surface_integral(z1, shell, WeightKind::Custom,
                                                    cfg_for(z1, 200'000), one);
  check_close(custom, area, 0.03);
}

TEST_CASE("sublevel energy") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  double cyl = kPi * 0.01 * kPi;
  EstimateResult p2 = mc_sublevel_energy(z1, 0.1, 2.0, cfg_for(z1, 2'000'000));
  check_close(p2, cyl, 0.02);
  EstimateResult p7 = mc_sublevel_energy(z1, 0.1, 7.0, cfg_for(z1, 2'000'000));
  CHECK(p7.value == doctest::Approx(p2.value).epsilon(1e-12));  // |grad f| == 1

  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  EstimateResult j_est =
      mc_sublevel_energy(f, 0.1, 2.0, cfg_for(f, 2'000'000, 7, Sampling::Auto));
  check_close(j_est, monomial_J_exact_n2(1, 1, 0.1), 0.01);
}

TEST_CASE("graph-formula fiber volumes") {
  MonomialSpec a11{{1, 1}};
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.n_samples = 1'000'000;
  cfg.n_workers = 2;
  cfg.sampling = Sampling::LogRadial;
  EstimateResult v05 = mc_graph_fiber_volume(a11, Complex(0.5, 0.0), cfg);
  check_close(v05, fiber_volume_z1z2_exact(0.5), 0.01);
  EstimateResult v09 = mc_graph_fiber_volume(a11, Complex(0.9, 0.0), cfg);
  check_close(v09, 2.0 * kPi * 0.19, 0.01);
  CHECK(v09.n_rejected > 0);  // rejection outside the admissible base region
}

TEST_CASE("weighted integrals against the radial oracle (n = 1)") {
  SparsePolynomial z = parse_polynomial_shorthand("z1");
  // The integrand's mass near Z(f) decays like 1/|log r|, so the sampler
  // needs its deep radial floor here.
  SamplerConfig cfg = cfg_for(z, 300'000, 11, Sampling::Auto);
  cfg.radial_floor = 1e-150;
  double expect = 2.0 * kPi / std::abs(std::log(0.3));
  CHECK(expect == doctest::Approx(5.21866).epsilon(3e-5));
  CHECK(expect ==
        doctest::Approx(2.0 * kPi * oracles::radial_model_quad(1, 2, 0, 0.3)).epsilon(1e-8));

  EstimateResult gu = mc_weighted_integral(z, {IntegrandSpec::Kind::GradUSq, 0.0},
                                           RegionSpec::sub_ball(0.3), cfg);
  CHECK(std::abs(gu.value - expect) <= 3.0 * gu.std_error);

  EstimateResult ag = mc_weighted_integral(z, {IntegrandSpec::Kind::AbsG, 0.0},
                                           RegionSpec::sub_ball(0.3), cfg);
  CHECK(ag.value == doctest::Approx(gu.value).epsilon(1e-12));
}

TEST_CASE("weighted integral: inverse power on the full bidisc") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  SamplerConfig cfg = cfg_for(f, 10'000'000, 5, Sampling::Auto);
  EstimateResult est = mc_weighted_integral(f, {IntegrandSpec::Kind::InvFP, 0.5},
                                            RegionSpec::domain(), cfg);
  CHECK(est.value > 0.0);
  CHECK(std::isfinite(est.value));
  CHECK(est.std_error / est.value < 0.05);
}

TEST_CASE("determinism: bitwise-identical reruns and worker-count invariance") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  for (Sampling s : {Sampling::Uniform, Sampling::Auto}) {
    SamplerConfig a = cfg_for(f, 300'000, 99, s);
    a.n_workers = 1;
    SamplerConfig b = a;
    b.n_workers = 3;
    EstimateResult r1 = mc_sublevel_volume(f, 0.2, a);
    EstimateResult r2 = mc_sublevel_volume(f, 0.2, a);
    EstimateResult r3 = mc_sublevel_volume(f, 0.2, b);
    CHECK(r1.value == r2.value);
    CHECK(r1.std_error == r2.std_error);
    CHECK(r1.value == r3.value);
    CHECK(r1.std_error == r3.std_error);
    CHECK(r1.n_used == r3.n_used);
  }
}

TEST_CASE("CLT scaling: quadrupling samples halves the error bar") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  EstimateResult small = mc_sublevel_volume(z1, 0.5, cfg_for(z1, 250'000, 21));
  EstimateResult big = mc_sublevel_volume(z1, 0.5, cfg_for(z1, 1'000'000, 21));
  double ratio = small.std_error / big.std_error;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}

TEST_CASE("scaling invariance: c f at |c| eps is the same experiment") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  SparsePolynomial cf = f.scaled(Complex(2.0, 0.0));
  SamplerConfig cfg = cfg_for(f, 200'000, 31);
  EstimateResult a = mc_sublevel_volume(f, 0.3, cfg);
  EstimateResult b = mc_sublevel_volume(cf, 0.6, cfg);
  CHECK(a.value == b.value);
  CHECK(a.n_hits == b.n_hits);
}

TEST_CASE("volume monotonicity in eps under a shared seed") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  SamplerConfig cfg = cfg_for(f, 200'000, 17);
  double prev = -1.0;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    double v = mc_sublevel_volume(f, eps, cfg).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("shell width refinement stays within error bars of the closed form") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  double exact = monomial_I_exact_n2(1, 1, 0.1);
  for (double frac : {10.0, 20.0, 40.0}) {
    SamplerConfig cfg = cfg_for(f, 2'000'000, 13, Sampling::Auto);
    EstimateResult est = mc_shell_surface_integral(f, ShellSpec{0.1, 0.1 / frac},
                                                   WeightKind::GradF, cfg);
    CHECK(std::abs(est.value - exact) <=
          std::max(3.5 * est.std_error, 0.02 * exact));
  }
}

TEST_CASE("ball domains via bounding-polydisc rejection") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  SamplerConfig cfg = cfg_for(z1, 1'000'000, 23);
  cfg.domain = PolyDomain::ball(1.0);
  // Vol({|z1| < 1/2} within the unit ball of C^2) = 2 pi^2 (1/8 - 1/64)
  double expect = 2.0 * kPi * kPi * (0.125 - 0.015625);
  EstimateResult est = mc_sublevel_volume(z1, 0.5, cfg);
  CHECK(std::abs(est.value - expect) <= std::max(3.0 * est.std_error, 0.01 * expect));
  CHECK(est.n_rejected > 0);
}

TEST_CASE("low-discrepancy smoke mode") {
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  SamplerConfig cfg = cfg_for(z1, 100'000, 0, Sampling::Halton);
  EstimateResult est = mc_sublevel_volume(z1, 0.5, cfg);
  CHECK(est.low_discrepancy);
  CHECK(est.std_error == 0.0);
  CHECK(est.value == doctest::Approx(kPi * kPi * 0.25).epsilon(0.01));
}

TEST_CASE("estimator validation errors") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2");
  SamplerConfig cfg = cfg_for(f, 500, 1);
  CHECK_THROWS_AS(static_cast<void>(mc_sublevel_volume(f, 0.1, cfg)), LabError);

  SamplerConfig ok = cfg_for(f, 10'000, 1);
  ok.n_workers = 0;
  CHECK_THROWS_AS(static_cast<void>(mc_sublevel_volume(f, 0.1, ok)), LabError);

  SamplerConfig deep = cfg_for(f, 10'000, 1, Sampling::LogRadial);
  deep.radial_floor = 1e-200;
  CHECK_THROWS_AS(static_cast<void>(mc_sublevel_volume(f, 0.1, deep)), LabError);

  CHECK_THROWS_AS(static_cast<void>(mc_shell_surface_integral(
                      f, ShellSpec{0.1, 0.2}, WeightKind::Unit, cfg_for(f, 10'000))),
                  LabError);

  SparsePolynomial constant = parse_polynomial_shorthand("3", 2);
  CHECK_THROWS_AS(static_cast<void>(mc_sublevel_volume(constant, 0.1, cfg_for(f, 10'000))),
                  LabError);

  // shell far beyond sup |f|: nothing lands in it
  SparsePolynomial small = f.scaled(Complex(0.25, 0.0));
  CHECK_THROWS_WITH_AS(static_cast<void>(mc_shell_surface_integral(
                           small, ShellSpec{0.9, 0.01}, WeightKind::Unit,
                           cfg_for(small, 10'000))),
                       doctest::Contains("no sample"), LabError);

  // iterated-log integrand without normalization
  SparsePolynomial z1 = parse_polynomial_shorthand("z1", 2);
  CHECK_THROWS_AS(static_cast<void>(mc_weighted_integral(
                      z1, {IntegrandSpec::Kind::AbsT, 0.0}, RegionSpec::domain(),
                      cfg_for(z1, 10'000))),
                  LabError);
}

TEST_CASE("leading coefficient of I(eps) confirmed by thin shells in n = 3") {
  SparsePolynomial f = parse_polynomial_shorthand("z1 z2 z3");
  double c = monomial_I_leading({{1, 1, 1}});
  for (double eps : {1e-2, 1e-3}) {
    SamplerConfig cfg = cfg_for(f, 4'000'000, 5, Sampling::Auto);
    EstimateResult est =
        mc_shell_surface_integral(f, ShellSpec{eps, eps / 20.0}, WeightKind::GradF, cfg);
    CHECK(std::abs(est.value / eps - c) / c < 0.02);
  }
}

TEST_CASE("fiber solvable pattern detection") {
  CHECK(fiber_solvable(parse_polynomial_shorthand("z1", 2)));
  CHECK(fiber_solvable(parse_polynomial_shorthand("z1 z2")));
  CHECK(fiber_solvable(parse_polynomial_shorthand("z1^2 - z2^3")));
  CHECK(fiber_solvable(parse_polynomial_shorthand("z1^2 z2^3")));
  CHECK(fiber_solvable(parse_polynomial_shorthand("z1 z2 z3")));
  CHECK_FALSE(fiber_solvable(parse_polynomial_shorthand("z1^2 + z1 z2 + z2^2")));
}

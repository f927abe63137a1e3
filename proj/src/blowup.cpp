#include "lslab/blowup.hpp"

#include <cmath>
#include <numbers>

#include "lslab/rng.hpp"
#include "lslab/sobolev.hpp"

namespace lslab {

namespace {
constexpr double kPi = std::numbers::pi;

void check_chart(const BlowupChart& chart) {
  require(chart.id == 1 || chart.id == 2, ErrorCode::Domain, "chart id must be 1 or 2");
}
}  // namespace

std::array<Complex, 2> chart_map(const BlowupChart& chart, Complex c1, Complex c2) {
  check_chart(chart);
  if (chart.id == 1) return {c1, c1 * c2};
  return {c1 * c2, c2};
}

Complex chart_jacobian(const BlowupChart& chart, Complex c1, Complex c2) {
  check_chart(chart);
  return chart.id == 1 ? c1 : c2;
}

SparsePolynomial pullback_to_chart(const SparsePolynomial& f, const BlowupChart& chart) {
  check_chart(chart);
  require(f.dimension() == 2, ErrorCode::DimensionMismatch, "blow-up is for C^2 subjects");
  SparsePolynomial g(2);
  for (const auto& [idx, c] : f.terms()) {
    int a = idx[0], b = idx[1];
    // chart 1: z1^a z2^b -> c1^{a+b} c2^b; chart 2: -> c1^a c2^{a+b}
    MultiIndex m = chart.id == 1 ? MultiIndex{a + b, b} : MultiIndex{a, a + b};
    g.add_term(m, c);
  }
  return g;
}

double factorization_residual(const SparsePolynomial& subject,
                              const BlowupChart& chart, int exceptional_exponent,
                              const SparsePolynomial& strict_transform,
                              std::uint64_t seed, int n_points) {
  check_chart(chart);
  int divisor_coord = chart.id == 1 ? 0 : 1;
  double worst = 0.0;
  for (int s = 0; s < n_points; ++s) {
    Complex c[2];
    for (int i = 0; i < 2; ++i) {
      double r = std::sqrt(uniform01(seed, static_cast<std::uint64_t>(s) * 4 + 2 * i));
      double th = 2.0 * kPi * uniform01(seed, static_cast<std::uint64_t>(s) * 4 + 2 * i + 1);
      c[i] = Complex(r * std::cos(th), r * std::sin(th));
    }
    std::array<Complex, 2> z = chart_map(chart, c[0], c[1]);
    Complex lhs = subject.evaluate(std::span<const Complex>(z.data(), 2));
    Complex divisor = 1.0;
    for (int k = 0; k < exceptional_exponent; ++k) divisor *= c[divisor_coord];
    Complex rhs = divisor * strict_transform.evaluate(std::span<const Complex>(c, 2));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

SparsePolynomial cusp_polynomial() {
  SparsePolynomial f(2);
  f.add_term({2, 0}, 1.0);
  f.add_term({0, 3}, -1.0);
  return f;
}

PullbackFactorization pullback_factorization(const BlowupChart& chart) {
  check_chart(chart);
  PullbackFactorization out;
  out.exceptional_exponent = 2;
  out.strict_transform = SparsePolynomial(2);
  if (chart.id == 1) {
    // z1^2 (1 - z1 t^3)
    out.strict_transform.add_term({0, 0}, 1.0);
    out.strict_transform.add_term({1, 3}, -1.0);
  } else {
    // z2^2 (s^2 - z2)
    out.strict_transform.add_term({2, 0}, 1.0);
    out.strict_transform.add_term({0, 1}, -1.0);
  }
  out.max_residual = factorization_residual(cusp_polynomial(), chart,
                                            out.exceptional_exponent,
                                            out.strict_transform, 7u, 1000);
  return out;
}

double resolved_A1_model_integral(double delta) {
  require(delta > 0.0 && delta < std::exp(-1.0), ErrorCode::Domain,
          "delta must lie in (0, 1/e)");
  return 1.0 / std::log(std::log(1.0 / delta));
}

}  // namespace lslab

#pragma once

#include <array>
#include <cstdint>

#include "lslab/poly.hpp"

namespace lslab {

// Point blow-up of C^2 at the origin in its two affine charts:
//   chart 1: (c1, c2) = (z1, t),  pi(c) = (c1, c1 c2),  det Dpi = c1
//   chart 2: (c1, c2) = (s, z2),  pi(c) = (c1 c2, c2),  det Dpi = c2
// The flagship subject is the cusp z1^2 - z2^3, whose total transform
// factors as divisor^2 times a smooth strict transform in each chart.

struct BlowupChart {
  int id = 1;  // 1 or 2
};

std::array<Complex, 2> chart_map(const BlowupChart& chart, Complex c1, Complex c2);

/// Determinant of the derivative of the chart map.
Complex chart_jacobian(const BlowupChart& chart, Complex c1, Complex c2);

/// Pulls a polynomial in (z1, z2) back through the chart map; exact on
/// exponents (each variable is substituted by a monomial).
SparsePolynomial pullback_to_chart(const SparsePolynomial& f, const BlowupChart& chart);

/// Max over seeded random chart points of |f(pi(c)) - divisor^e * strict(c)|.
double factorization_residual(const SparsePolynomial& subject,
                              const BlowupChart& chart, int exceptional_exponent,
                              const SparsePolynomial& strict_transform,
                              std::uint64_t seed, int n_points);

struct PullbackFactorization {
  int exceptional_exponent = 0;
  SparsePolynomial strict_transform{2};
  double max_residual = 0.0;
};

/// Factorization of the cusp z1^2 - z2^3 in the given chart, with the
/// residual checked over 1000 seeded points.
PullbackFactorization pullback_factorization(const BlowupChart& chart);

/// The cusp polynomial z1^2 - z2^3.
SparsePolynomial cusp_polynomial();

/// Radial bound int_0^delta dr / (r |log r| (log|log r|)^2) = 1/log(log(1/delta)),
/// the model integral for the resolved Hessian piece of the cusp.
double resolved_A1_model_integral(double delta);

}  // namespace lslab

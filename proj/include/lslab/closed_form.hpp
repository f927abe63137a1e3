#pragma once

#include <span>
#include <vector>

#include "lslab/poly.hpp"

namespace lslab {

// Exact and asymptotic reference values on the unit polydisc. These serve as
// oracles for the Monte-Carlo estimators, so they are computed from exact
// antiderivatives rather than quadrature wherever possible.

/// Level-set energy integral for f = z1^k z2^l on the unit bidisc:
/// I(eps) = 2 pi^2 eps [ k (1 - eps^{2/l}) + l (1 - eps^{2/k}) ].
double monomial_I_exact_n2(int k, int l, double eps);

/// Sublevel energy for the same family:
/// J(eps) = (2 pi)^2 [ (k+l)/4 eps^2 - kl/(4(l+1)) eps^{2+2/l}
///                      - kl/(4(k+1)) eps^{2+2/k} ].
double monomial_J_exact_n2(int k, int l, double eps);

/// Leading coefficient c of I(eps) ~ c * eps for f = z^A with all exponents
/// positive: c = 2 pi^n * sum_j k_j. Zero exponents must be stripped first;
/// the caller reinstates a factor pi per removed disc.
double monomial_I_leading(const MonomialSpec& A);

/// lim_{eps->0} of the constrained moment integral below: prod_i 1/(alpha_i+1).
double constrained_moment_limit(std::span<const double> alphas);

/// Exact value of int_{u in (0,1]^m, prod u_i >= eps} prod u_i^{alpha_i} du,
/// via the substitution u_i = e^{-x_i} and exact exponential-polynomial
/// antiderivatives over the simplex x_1 + ... + x_m <= -log eps.
double constrained_moment_finite(std::span<const double> alphas, double eps);

/// Area of the fiber {z1 z2 = w} inside the unit bidisc: 2 pi (1 - |w|^2).
double fiber_volume_z1z2_exact(double w_abs);

/// Exact volume of {z in unit bidisc : |z1^k z2^l| < eps}.
double monomial_sublevel_volume_exact(int k, int l, double eps);

/// Graph-volume integrand for the fiber {z^A = w} viewed as an a_n-sheeted
/// graph over z' = (z_1, ..., z_{n-1}):
///   a_n (1 + sum_j (a_j/a_n)^2 |z_n|^2 / |z_j|^2),  |z_n| = |w/P(z')|^{1/a_n}.
/// Throws OUTSIDE_BASE when |P(z')| <= |w|.
double graph_volume_integrand(const MonomialSpec& A, Complex w,
                              std::span<const Complex> zprime);

/// Non-throwing variant: returns false instead of OUTSIDE_BASE.
bool try_graph_volume_integrand(const MonomialSpec& A, Complex w,
                                std::span<const Complex> zprime, double& out);

}  // namespace lslab

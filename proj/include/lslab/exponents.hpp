#pragma once

#include <vector>

#include "lslab/poly.hpp"

namespace lslab {

struct FitPoint {
  double eps = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

/// Least-squares power-law fit y = C eps^exponent through (log eps, log y).
struct ScalingFit {
  double exponent = 0.0;
  double log_constant = 0.0;
  double r_squared = 0.0;
  std::vector<FitPoint> points;  // the points actually fitted
};

ScalingFit fit_power_law(const std::vector<FitPoint>& points);

struct DirectionProbe {
  MultiIndex direction;
  double slope = 0.0;  // fitted slope of log|grad f| against log|f|
};

/// Curve-probe estimate of the gradient-inequality exponent: the largest
/// fitted slope of log|grad f(z(t))| against log|f(z(t))| over monomial
/// curves z_i(t) = t^{a_i}, a in {1..a_max}^n. A lower bound in general;
/// exact for monomials and for z1^p - z2^q.
struct LojasiewiczEstimate {
  double alpha = 0.0;  // clamped to [0, 1)
  std::vector<DirectionProbe> per_direction;
  MultiIndex best_direction;
  bool clamped = false;  // a fit exceeded 1 - 1e-3 before clamping
  double beta() const { return 0.5 * (alpha + 1.0); }
};

std::vector<double> default_probe_grid();

LojasiewiczEstimate lojasiewicz_curve_probe(const SparsePolynomial& f,
                                            int a_max,
                                            const std::vector<double>& t_grid);

/// Derived exponents: level-set area O(eps^gamma), sublevel volume
/// O(eps^tau), and the lower bound on the complex singularity exponent.
struct ExponentReport {
  double gamma = 0.0;
  double tau = 0.0;
  double cse_lower = 0.0;
};

ExponentReport exponent_report(double alpha);

}  // namespace lslab

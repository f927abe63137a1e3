#pragma once

#include <functional>

namespace lslab {

/// Adaptive Simpson integration of f on [a, b] to the requested tolerances.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-10,
                        double abs_tol = 1e-14, int max_depth = 60);

/// Integrates f over [a, +inf) by summing adaptive-Simpson pieces over
/// geometrically growing segments until the increment is negligible.
/// Intended for integrands with exponential or fast polynomial decay.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10);

}  // namespace lslab

#include "lslab/quadrature.hpp"

#include <cmath>

namespace lslab {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return (fa + 4.0 * fm + fb) * h / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson(fa, fm, fb, b - a);
  double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  return adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol) {
  double total = 0.0;
  double lo = a, len = 1.0;
  for (int k = 0; k < 400; ++k) {
    double hi = lo + len;
    double piece = adaptive_simpson(f, lo, hi, rel_tol * 0.1, 1e-300);
    total += piece;
    if (std::abs(piece) < rel_tol * 1e-3 * std::abs(total) + 1e-300 && k > 4)
      break;
    lo = hi;
    len *= 2.0;
  }
  return total;
}

}  // namespace lslab

#include "lslab/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lslab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_eps_unit(double eps, bool allow_one) {
  bool ok = eps > 0.0 && (allow_one ? eps <= 1.0 : eps < 1.0) && std::isfinite(eps);
  require(ok, ErrorCode::Domain, "eps must lie in (0,1]");
}

// Sum of c * L^k * exp(-beta * L) terms; closed under the convolution
// int_0^L exp(-b x) T(L - x) dx, which is how the simplex integral below is
// assembled one variable at a time.
struct ExpPolyTerm {
  double coef;
  double rate;
  int power;
};

using ExpPoly = std::vector<ExpPolyTerm>;

bool same_rate(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

void push_term(ExpPoly& p, double coef, double rate, int power) {
  if (coef == 0.0) return;
  for (ExpPolyTerm& t : p) {
    if (t.power == power && same_rate(t.rate, rate)) {
      t.coef += coef;
      return;
    }
  }
  p.push_back({coef, rate, power});
}

double factorial_ratio(int k, int i) {  // k! / (k-i)!
  double r = 1.0;
  for (int j = 0; j < i; ++j) r *= static_cast<double>(k - j);
  return r;
}

// F_m(L) = int_0^L exp(-beta x) F_{m-1}(L - x) dx, term by term.
ExpPoly convolve(const ExpPoly& prev, double beta) {
  ExpPoly out;
  for (const ExpPolyTerm& t : prev) {
    if (same_rate(t.rate, beta)) {
      push_term(out, t.coef / (t.power + 1), beta, t.power + 1);
      continue;
    }
    double a = beta - t.rate;
    double sign = 1.0;
    for (int i = 0; i <= t.power; ++i) {
      double c = t.coef * sign * factorial_ratio(t.power, i) / std::pow(a, i + 1);
      push_term(out, c, t.rate, t.power - i);
      sign = -sign;
    }
    double cz = t.coef * (t.power % 2 == 0 ? 1.0 : -1.0) *
                factorial_ratio(t.power, t.power) / std::pow(a, t.power + 1);
    push_term(out, -cz, beta, 0);
  }
  return out;
}

double eval_exp_poly(const ExpPoly& p, double L) {
  double s = 0.0;
  for (const ExpPolyTerm& t : p)
    s += t.coef * std::pow(L, t.power) * std::exp(-t.rate * L);
  return s;
}

}  // namespace

double monomial_I_exact_n2(int k, int l, double eps) {
  require(k >= 1 && l >= 1, ErrorCode::Domain, "exponents must be positive");
  check_eps_unit(eps, true);
  double bracket = k * (1.0 - std::pow(eps, 2.0 / l)) + l * (1.0 - std::pow(eps, 2.0 / k));
  return 2.0 * kPi * kPi * eps * bracket;
}

double monomial_J_exact_n2(int k, int l, double eps) {
  require(k >= 1 && l >= 1, ErrorCode::Domain, "exponents must be positive");
  check_eps_unit(eps, true);
  double kk = k, ll = l;
  double v = (kk + ll) / 4.0 * eps * eps -
             kk * ll / (4.0 * (ll + 1.0)) * std::pow(eps, 2.0 + 2.0 / ll) -
             kk * ll / (4.0 * (kk + 1.0)) * std::pow(eps, 2.0 + 2.0 / kk);
  return 4.0 * kPi * kPi * v;
}

double monomial_I_leading(const MonomialSpec& A) {
  require(!A.exponents.empty(), ErrorCode::Domain, "empty exponent vector");
  double sum = 0.0;
  for (int k : A.exponents) {
    require(k >= 1, ErrorCode::Domain,
            "zero exponent: strip zero coordinates before calling");
    sum += k;
  }
  return 2.0 * std::pow(kPi, static_cast<double>(A.exponents.size())) * sum;
}

double constrained_moment_limit(std::span<const double> alphas) {
  require(!alphas.empty(), ErrorCode::Domain, "empty exponent list");
  double p = 1.0;
  for (double a : alphas) {
    require(a > -1.0, ErrorCode::Domain, "alpha must exceed -1");
    p *= 1.0 / (a + 1.0);
  }
  return p;
}

double constrained_moment_finite(std::span<const double> alphas, double eps) {
  require(!alphas.empty(), ErrorCode::Domain, "empty exponent list");
  require(eps > 0.0 && eps < 1.0, ErrorCode::Domain, "eps must lie in (0,1)");
  for (double a : alphas)
    require(a > -1.0, ErrorCode::Domain, "alpha must exceed -1");

  double L = -std::log(eps);
  // F_1(L) = (1 - exp(-beta_1 L)) / beta_1, then convolve in the remaining
  // exponential rates beta_i = alpha_i + 1.
  double b0 = alphas[0] + 1.0;
  ExpPoly f{{1.0 / b0, 0.0, 0}, {-1.0 / b0, b0, 0}};
  for (size_t i = 1; i < alphas.size(); ++i) f = convolve(f, alphas[i] + 1.0);
  return eval_exp_poly(f, L);
}

double fiber_volume_z1z2_exact(double w_abs) {
  require(w_abs >= 0.0 && w_abs < 1.0, ErrorCode::Domain, "|w| must lie in [0,1)");
  return 2.0 * kPi * (1.0 - w_abs * w_abs);
}

double monomial_sublevel_volume_exact(int k, int l, double eps) {
  require(k >= 1 && l >= 1, ErrorCode::Domain, "exponents must be positive");
  check_eps_unit(eps, true);
  // (2pi)^2/(kl) * int_{uv<eps, (0,1)^2} u^{a-1} v^{b-1} du dv, a=2/k, b=2/l.
  double a = 2.0 / k, b = 2.0 / l;
  double inner;
  if (k == l) {
    inner = std::pow(eps, a) / (a * a) + std::pow(eps, a) * std::log(1.0 / eps) / a;
  } else {
    inner = std::pow(eps, a) / (a * b) +
            (std::pow(eps, b) - std::pow(eps, a)) / (b * (a - b));
  }
  return 4.0 * kPi * kPi / (static_cast<double>(k) * l) * inner;
}

bool try_graph_volume_integrand(const MonomialSpec& A, Complex w,
                                std::span<const Complex> zprime, double& out) {
  size_t n = A.exponents.size();
  require(n >= 2, ErrorCode::Domain, "need at least two coordinates");
  require(zprime.size() == n - 1, ErrorCode::DimensionMismatch,
          "base point must have n-1 coordinates");
  int an = A.exponents.back();
  require(an >= 1, ErrorCode::Domain, "last exponent must be >= 1");

  double abs_p = 1.0;
  for (size_t j = 0; j + 1 < n; ++j)
    abs_p *= std::pow(std::abs(zprime[j]), A.exponents[j]);
  double abs_w = std::abs(w);
  if (abs_p <= abs_w) return false;

  double zn2 = std::pow(abs_w / abs_p, 2.0 / an);
  double s = 1.0;
  for (size_t j = 0; j + 1 < n; ++j) {
    double aj = A.exponents[j];
    if (aj == 0.0) continue;
    double rj2 = std::norm(zprime[j]);
    s += (aj * aj) / (static_cast<double>(an) * an) * zn2 / rj2;
  }
  out = an * s;
  return true;
}

double graph_volume_integrand(const MonomialSpec& A, Complex w,
                              std::span<const Complex> zprime) {
  double out = 0.0;
  if (!try_graph_volume_integrand(A, w, zprime, out))
    fail(ErrorCode::OutsideBase, "base point outside the admissible region");
  return out;
}

}  // namespace lslab

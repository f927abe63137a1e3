#include "lslab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lslab {

namespace {

struct LineFit {
  double slope, intercept, r2;
};

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (syy == 0.0) {
    f.r2 = 1.0;
  } else {
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double r = y[i] - (f.intercept + f.slope * x[i]);
      ss_res += r * r;
    }
    f.r2 = 1.0 - ss_res / syy;
  }
  return f;
}

// f restricted to z_i = t^{a_i}: a univariate polynomial in t assembled
// exactly, so directions whose probe line lies in Z(f) cancel symbolically.
std::map<long, Complex> compose_on_curve(const SparsePolynomial& f,
                                         const MultiIndex& a) {
  std::map<long, Complex> c;
  for (const auto& [idx, coef] : f.terms()) {
    long e = 0;
    for (size_t i = 0; i < idx.size(); ++i)
      e += static_cast<long>(idx[i]) * a[i];
    c[e] += coef;
  }
  for (auto it = c.begin(); it != c.end();)
    it = std::abs(it->second) == 0.0 ? c.erase(it) : std::next(it);
  return c;
}

double eval_abs(const std::map<long, Complex>& c, double t) {
  Complex acc = 0.0;
  for (const auto& [e, coef] : c) acc += coef * std::pow(t, static_cast<double>(e));
  return std::abs(acc);
}

void enumerate_directions(int n, int a_max, MultiIndex& cur,
                          std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int a = 1; a <= a_max; ++a) {
    cur.push_back(a);
    enumerate_directions(n, a_max, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ScalingFit fit_power_law(const std::vector<FitPoint>& points) {
  require(points.size() >= 3, ErrorCode::InsufficientPoints,
          "power-law fit needs at least 3 points");
  ScalingFit fit;
  for (const FitPoint& p : points) {
    require(p.eps > 0.0 && std::isfinite(p.eps), ErrorCode::Domain,
            "eps values must be positive");
    if (p.value > 0.0) fit.points.push_back(p);
  }
  require(fit.points.size() >= 3, ErrorCode::NonpositiveValue,
          "fewer than 3 points with positive values");
  std::vector<double> x, y;
  for (const FitPoint& p : fit.points) {
    x.push_back(std::log(p.eps));
    y.push_back(std::log(p.value));
  }
  LineFit lf = ols(x, y);
  fit.exponent = lf.slope;
  fit.log_constant = lf.intercept;
  fit.r_squared = lf.r2;
  return fit;
}

std::vector<double> default_probe_grid() {
  // 4 decades below t = 0.1, log-spaced.
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(std::pow(10.0, -1.0 - 0.1 * i));
  return g;
}

LojasiewiczEstimate lojasiewicz_curve_probe(const SparsePolynomial& f,
                                            int a_max,
                                            const std::vector<double>& t_grid) {
  require(a_max >= 1, ErrorCode::Domain, "a_max must be >= 1");
  require(t_grid.size() >= 8, ErrorCode::Domain, "t grid too small");
  for (double t : t_grid)
    require(t > 0.0 && t <= 0.1, ErrorCode::Domain, "t grid must lie in (0, 0.1]");
  require(!f.is_constant(), ErrorCode::Domain, "subject must be nonconstant");

  int n = f.dimension();
  std::vector<SparsePolynomial> partials;
  for (int i = 0; i < n; ++i) partials.push_back(f.partial(i));

  std::vector<MultiIndex> directions;
  MultiIndex cur;
  enumerate_directions(n, a_max, cur, directions);

  LojasiewiczEstimate est;
  double best = -1.0;
  for (const MultiIndex& a : directions) {
    auto cf = compose_on_curve(f, a);
    if (cf.empty()) continue;  // probe line lies in Z(f)
    std::vector<std::map<long, Complex>> cg;
    cg.reserve(partials.size());
    for (const SparsePolynomial& d : partials) cg.push_back(compose_on_curve(d, a));

    std::vector<double> xf, yg;
    bool usable = true;
    for (double t : t_grid) {
      double af = eval_abs(cf, t);
      double g2 = 0.0;
      for (const auto& c : cg) {
        double v = eval_abs(c, t);
        g2 += v * v;
      }
      double ag = std::sqrt(g2);
      if (af < 1e-280 || ag < 1e-280) {
        usable = false;
        break;
      }
      xf.push_back(std::log(af));
      yg.push_back(std::log(ag));
    }
    if (!usable) continue;
    double slope = ols(xf, yg).slope;
    if (slope < 0.0) slope = 0.0;
    est.per_direction.push_back({a, slope});
    best = std::max(best, slope);
  }
  if (est.per_direction.empty())
    fail(ErrorCode::AllDirectionsDegenerate, "every probe line lies in Z(f)");
  // Equal maxima happen structurally (every diagonal multiple of a direction
  // fits the same slope); report the first attaining direction.
  for (const DirectionProbe& d : est.per_direction) {
    if (d.slope >= best - 1e-10) {
      est.best_direction = d.direction;
      break;
    }
  }
  est.clamped = best > 1.0 - 1e-3;
  est.alpha = std::clamp(best, 0.0, 1.0 - 1e-9);
  return est;
}

ExponentReport exponent_report(double alpha) {
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::Domain, "alpha must lie in [0,1)");
  double gamma = 1.0 - alpha;
  return {gamma, 2.0 * gamma, gamma};
}

}  // namespace lslab

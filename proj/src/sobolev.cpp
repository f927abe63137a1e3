#include "lslab/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lslab/quadrature.hpp"
#include "lslab/rng.hpp"

namespace lslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroFloor = 1e-300;

struct LogState {
  Complex fv;
  double m;      // |f|
  double al1;    // -log|f|^2 > 0
  double l2;     // log(-log|f|^2) > 0 for m < e^{-1/2}
};

LogState log_state(const SparsePolynomial& f, std::span<const Complex> point) {
  LogState s;
  s.fv = f.evaluate(point);
  s.m = std::abs(s.fv);
  if (s.m < kZeroFloor)
    fail(ErrorCode::OnZeroSet, "|f| under the evaluation floor");
  if (s.m >= 0.5)
    fail(ErrorCode::NotNormalized, "|f| >= 1/2; rescale the subject first");
  s.al1 = -2.0 * std::log(s.m);
  s.l2 = std::log(s.al1);
  return s;
}

}  // namespace

const char* singular_kind_name(SingularKind k) {
  switch (k) {
    case SingularKind::U: return "U";
    case SingularKind::V: return "V";
    case SingularKind::G: return "G";
    case SingularKind::T: return "T";
    case SingularKind::GradUNorm: return "GRAD_U_NORM";
    case SingularKind::GradVNorm: return "GRAD_V_NORM";
    case SingularKind::A1: return "A1";
    case SingularKind::A2: return "A2";
    case SingularKind::A3: return "A3";
    case SingularKind::A4: return "A4";
  }
  return "?";
}

Complex eval_singular(SingularKind kind, const SparsePolynomial& f,
                      std::span<const Complex> point, int i, int j) {
  LogState s = log_state(f, point);
  switch (kind) {
    case SingularKind::U:
      return s.l2;
    case SingularKind::V:
      return 1.0 / s.l2;
    case SingularKind::G: {
      Gradient g = f.gradient(point);
      return -4.0 * g.norm * g.norm / (s.m * s.m * s.al1 * s.al1);
    }
    case SingularKind::T: {
      Gradient g = f.gradient(point);
      return 4.0 * g.norm * g.norm / (s.m * s.m * s.al1 * s.al1 * s.l2 * s.l2) *
             (1.0 + 2.0 / s.l2);
    }
    case SingularKind::GradUNorm: {
      Gradient g = f.gradient(point);
      return 2.0 * g.norm / (s.m * s.al1);
    }
    case SingularKind::GradVNorm: {
      Gradient g = f.gradient(point);
      return 2.0 * g.norm / (s.m * s.al1 * s.l2 * s.l2);
    }
    case SingularKind::A1: {
      Complex hij = f.partial(i).partial(j).evaluate(point);
      return hij / (s.fv * s.al1 * s.l2 * s.l2);
    }
    case SingularKind::A2: {
      Complex di = f.partial(i).evaluate(point);
      Complex dj = f.partial(j).evaluate(point);
      return -di * dj / (s.fv * s.fv * s.al1 * s.l2 * s.l2);
    }
    case SingularKind::A3: {
      Complex di = f.partial(i).evaluate(point);
      Complex dj = f.partial(j).evaluate(point);
      return di * dj / (s.fv * s.fv * s.al1 * s.al1 * s.l2 * s.l2);
    }
    case SingularKind::A4: {
      Complex di = f.partial(i).evaluate(point);
      Complex dj = f.partial(j).evaluate(point);
      return 2.0 * di * dj / (s.fv * s.fv * s.al1 * s.al1 * s.l2 * s.l2 * s.l2);
    }
  }
  return 0.0;
}

RescaleRecord estimate_rescale(const SparsePolynomial& f,
                               const SamplerConfig& cfg_in) {
  SamplerConfig cfg = cfg_in;
  if (cfg.domain.radii.empty())
    cfg.domain = PolyDomain::unit_polydisc(f.dimension());
  cfg.domain.validate(f.dimension());
  RescaleRecord rec;
  rec.n_probe = 100000;
  int n = f.dimension();
  std::uint64_t seed = derive_seed(cfg.seed, 0x50555250ull);
  std::vector<Complex> z(static_cast<size_t>(n));
  double sup = 0.0;
  for (long long s = 0; s < rec.n_probe; ++s) {
    for (int i = 0; i < n; ++i) {
      double R = cfg.domain.bounding_radius(i);
      double r = R * std::sqrt(uniform01(seed, static_cast<std::uint64_t>(s) * 2 * n + 2 * i));
      double th = 2.0 * kPi * uniform01(seed, static_cast<std::uint64_t>(s) * 2 * n + 2 * i + 1);
      z[static_cast<size_t>(i)] = Complex(r * std::cos(th), r * std::sin(th));
    }
    sup = std::max(sup, std::abs(f.evaluate(z)));
  }
  require(sup > 0.0, ErrorCode::BadConfig, "subject vanishes on every probe sample");
  rec.sup_sample_abs = sup;
  rec.scale_c = 1.0 / (4.0 * sup);
  return rec;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Convergent: return "CONVERGENT";
    case Verdict::Divergent: return "DIVERGENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

void assemble_ledger_verdict(AnnulusLedger& ledger) {
  const auto& t = ledger.terms;
  ledger.partial_sums.clear();
  double s = 0.0;
  for (const AnnulusTerm& a : t) {
    s += a.value;
    ledger.partial_sums.push_back(s);
  }
  ledger.verdict = Verdict::Inconclusive;
  ledger.extrapolated_total = 0.0;
  size_t m = t.size();
  if (m < 6) return;

  // The last five consecutive pairs decide the verdict.
  for (size_t k = m - 6; k < m; ++k)
    if (t[k].empty) return;

  bool ratios_small = true;
  double rmax = 0.0;
  for (size_t k = m - 5; k < m; ++k) {
    if (t[k - 1].value <= 0.0) {
      ratios_small = false;
      break;
    }
    double r = t[k].value / t[k - 1].value;
    rmax = std::max(rmax, r);
    if (!(r < 0.95)) ratios_small = false;
  }
  if (ratios_small) {
    ledger.verdict = Verdict::Convergent;
    double tail = rmax < 1.0 ? t[m - 1].value * rmax / (1.0 - rmax) : 0.0;
    ledger.extrapolated_total = ledger.partial_sums.back() + tail;
    return;
  }

  // Nondecreasing within Monte-Carlo noise.
  bool nondecreasing = true;
  for (size_t k = m - 5; k < m; ++k) {
    double tol = 3.0 * std::sqrt(t[k].std_error * t[k].std_error +
                                 t[k - 1].std_error * t[k - 1].std_error);
    if (t[k].value < t[k - 1].value - tol) {
      nondecreasing = false;
      break;
    }
  }
  bool sums_growing = true;
  for (size_t k = m - 5; k < m; ++k) {
    if (!(ledger.partial_sums[k] >= 1.10 * ledger.partial_sums[k - 1])) {
      sums_growing = false;
      break;
    }
  }
  if (nondecreasing || sums_growing) ledger.verdict = Verdict::Divergent;
}

AnnulusLedger dyadic_integrability_test(const SparsePolynomial& f,
                                        const IntegrandSpec& integrand,
                                        int j0, int j1,
                                        const SamplerConfig& cfg_in) {
  require(j0 >= 1 && j1 > j0, ErrorCode::BadConfig, "need j1 > j0 >= 1");
  AnnulusLedger ledger;
  ledger.j0 = j0;
  ledger.j1 = j1;

  SamplerConfig cfg = cfg_in;
  if (cfg.domain.radii.empty())
    cfg.domain = PolyDomain::unit_polydisc(f.dimension());
  if (cfg.sampling == Sampling::Uniform) cfg.sampling = Sampling::Auto;

  SparsePolynomial subject = f;
  if (integrand.needs_iterated_log() || integrand.needs_single_log()) {
    RescaleRecord rec = estimate_rescale(f, cfg);
    subject = f.scaled(rec.scale_c);
    ledger.rescale = rec;
  }
  ledger.exploratory = !fiber_solvable(subject);

  for (int j = j0; j <= j1; ++j) {
    SamplerConfig cj = cfg;
    cj.seed = derive_seed(cfg.seed, 0xA000u + static_cast<std::uint64_t>(j));
    RegionSpec region = RegionSpec::f_annulus(std::pow(2.0, -j), std::pow(2.0, -(j - 1)));
    EstimateResult est = mc_weighted_integral(subject, integrand, region, cj);
    AnnulusTerm term;
    term.j = j;
    term.value = est.value;
    term.std_error = est.std_error;
    term.n_used = est.n_used;
    term.n_rejected = est.n_rejected;
    term.n_hits = est.n_hits;
    term.empty = est.n_hits == 0;
    ledger.terms.push_back(term);
  }
  assemble_ledger_verdict(ledger);
  return ledger;
}

Verdict classify_convergence(double a, double b, double c) {
  if (a < 1.0) return Verdict::Convergent;
  if (a == 1.0) {
    if (b > 1.0) return Verdict::Convergent;
    if (b == 1.0 && c > 1.0) return Verdict::Convergent;
  }
  return Verdict::Divergent;
}

std::optional<double> radial_reference_integral(double a, double b, double c,
                                                double upper) {
  require(upper > 0.0 && upper < std::exp(-1.0), ErrorCode::Domain,
          "upper must lie in (0, 1/e)");
  if (classify_convergence(a, b, c) == Verdict::Divergent) return std::nullopt;

  double x0 = -std::log(upper);  // > 1
  if (a != 1.0) {
    // t = e^{-x}:  int_{x0}^inf e^{(a-1)x} x^{-b} (log x)^{-c} dx, a < 1.
    auto g = [&](double x) {
      return std::exp((a - 1.0) * x) * std::pow(x, -b) * std::pow(std::log(x), -c);
    };
    return integrate_to_infinity(g, x0, 1e-10);
  }
  double y0 = std::log(x0);  // > 0
  if (b != 1.0) {
    // x = e^{y}:  int_{y0}^inf e^{(1-b)y} y^{-c} dy, b > 1.
    auto g = [&](double y) {
      return std::exp((1.0 - b) * y) * std::pow(y, -c);
    };
    return integrate_to_infinity(g, y0, 1e-10);
  }
  // a = b = 1, c > 1: int_{y0}^inf y^{-c} dy.
  return std::pow(y0, 1.0 - c) / (c - 1.0);
}

}  // namespace lslab

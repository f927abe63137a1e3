#include "lslab/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "lslab/closed_form.hpp"
#include "lslab/rng.hpp"

namespace lslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroFloor = 1e-300;   // |f| evaluation floor near Z(f)
constexpr double kHalfNorm = 0.60653065971263342;  // e^{-1/2}
constexpr long long kBlock = 1 << 16;   // fixed accumulation block
constexpr int kMaxDim = 8;

// --- compiled polynomials (flat term arrays, no allocation per eval) -------

struct CTerm {
  Complex c;
  int e[kMaxDim];
};

struct CPoly {
  int n = 0;
  std::vector<CTerm> t;

  Complex eval(const Complex* z) const {
    Complex acc = 0.0;
    for (const CTerm& term : t) {
      Complex m = term.c;
      for (int i = 0; i < n; ++i) {
        Complex zi = z[i];
        for (int k = term.e[i]; k > 0; --k) m *= zi;
      }
      acc += m;
    }
    return acc;
  }
};

CPoly compile(const SparsePolynomial& p) {
  require(p.dimension() <= kMaxDim, ErrorCode::BadConfig,
          "estimator supports dimension <= 8");
  CPoly c;
  c.n = p.dimension();
  for (const auto& [idx, coef] : p.terms()) {
    CTerm t;
    t.c = coef;
    for (int i = 0; i < kMaxDim; ++i)
      t.e[i] = i < c.n ? idx[static_cast<size_t>(i)] : 0;
    c.t.push_back(t);
  }
  return c;
}

struct PolyBundle {
  int n = 0;
  CPoly f;
  std::vector<CPoly> partials;
  std::vector<CPoly> second;  // row-major n x n, filled on demand

  static PolyBundle make(const SparsePolynomial& p, bool with_hessian) {
    PolyBundle b;
    b.n = p.dimension();
    b.f = compile(p);
    for (int i = 0; i < b.n; ++i) b.partials.push_back(compile(p.partial(i)));
    if (with_hessian) {
      for (int i = 0; i < b.n; ++i) {
        SparsePolynomial di = p.partial(i);
        for (int j = 0; j < b.n; ++j) b.second.push_back(compile(di.partial(j)));
      }
    }
    return b;
  }

  double grad_sq(const Complex* z) const {
    double s = 0.0;
    for (const CPoly& d : partials) s += std::norm(d.eval(z));
    return s;
  }

  double hessian_frobenius(const Complex* z) const {
    double s = 0.0;
    for (const CPoly& h : second) s += std::norm(h.eval(z));
    return std::sqrt(s);
  }
};

// --- proposals --------------------------------------------------------------

// Draw slot layout (fixed stride per run, counters are global sample index
// times stride plus slot):
//   slot 0              top-level route selector (fiber mixtures)
//   slots 1+3i .. 3+3i  coordinate i: component selector, radius, angle
//   slots 1+3n .. 3+3n  fiber value: log-radius, angle, branch
struct Draws {
  std::uint64_t seed;
  long long sample;
  int stride;
  double u(int slot) const {
    return uniform01(seed, static_cast<std::uint64_t>(sample) * stride + slot);
  }
};

struct FiberPattern {
  int coord = -1;
  int p = 0;
  SparsePolynomial A{1};  // dimension n, independent of `coord`
  SparsePolynomial B{1};  // dimension n, independent of `coord`
};

std::optional<FiberPattern> detect_fiber_pattern(const SparsePolynomial& f) {
  int n = f.dimension();
  std::optional<FiberPattern> best;
  for (int i = 0; i < n; ++i) {
    int p = 0;
    bool ok = true;
    for (const auto& [idx, c] : f.terms()) {
      int k = idx[static_cast<size_t>(i)];
      if (k == 0) continue;
      if (p == 0 || p == k) {
        p = k;
      } else {
        ok = false;
        break;
      }
    }
    if (!ok || p == 0) continue;
    FiberPattern pat;
    pat.coord = i;
    pat.p = p;
    pat.A = SparsePolynomial(n);
    pat.B = SparsePolynomial(n);
    for (const auto& [idx, c] : f.terms()) {
      MultiIndex rest = idx;
      if (rest[static_cast<size_t>(i)] == p) {
        rest[static_cast<size_t>(i)] = 0;
        pat.A.add_term(rest, c);
      } else {
        pat.B.add_term(rest, c);
      }
    }
    if (!best || pat.p < best->p) best = pat;
  }
  return best;
}

struct Proposal {
  Sampling mode = Sampling::Uniform;
  int n = 0;
  double radii[kMaxDim] = {};
  double rmin = 1e-15;
  double unif_density = 0.0;  // 1 / prod(pi R_i^2)

  // fiber route
  bool has_fiber = false;
  FiberPattern pat;
  CPoly cf, cA, cB, cdfi;
  double va = 0.0, vb = 0.0;

  double log_ratio(int i) const { return std::log(radii[i] / rmin); }

  // Mixture density of one coordinate draw at radius r (0 <= r <= R_i).
  double coord_density_1(int i, double r) const {
    double R = radii[i];
    double qu = 1.0 / (kPi * R * R);
    if (mode == Sampling::Uniform || mode == Sampling::Halton) return qu;
    double ql = (r >= rmin && r <= R) ? 1.0 / (2.0 * kPi * r * r * log_ratio(i)) : 0.0;
    return 0.5 * qu + 0.5 * ql;
  }

  double coord_density(const Complex* z) const {
    double q = 1.0;
    for (int i = 0; i < n; ++i) q *= coord_density_1(i, std::abs(z[i]));
    return q;
  }

  // Density of the fiber route at z (zero off its support).
  double fiber_density(const Complex* z) const {
    if (!has_fiber) return 0.0;
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i == pat.coord) continue;
      q *= coord_density_1(i, std::abs(z[i]));
    }
    Complex v = cf.eval(z);
    double av = std::abs(v);
    if (!(av >= va && av <= vb)) return 0.0;
    double qv = 1.0 / (2.0 * kPi * av * av * std::log(vb / va));
    double jac = std::norm(cdfi.eval(z));
    return q * qv * jac / pat.p;
  }

  Complex draw_coord(const Draws& d, int i) const {
    int base = 1 + 3 * i;
    double R = radii[i];
    double r;
    if (mode == Sampling::Uniform) {
      r = R * std::sqrt(d.u(base + 1));
    } else if (mode == Sampling::Halton) {
      r = R * std::sqrt(halton(static_cast<std::uint64_t>(d.sample), 2 * i));
    } else if (d.u(base) < 0.5) {
      r = R * std::sqrt(d.u(base + 1));
    } else {
      r = rmin * std::pow(R / rmin, d.u(base + 1));
    }
    double theta = 2.0 * kPi *
                   (mode == Sampling::Halton
                        ? halton(static_cast<std::uint64_t>(d.sample), 2 * i + 1)
                        : d.u(base + 2));
    return Complex(r * std::cos(theta), r * std::sin(theta));
  }

  // Returns false when the draw cannot produce a usable point.
  bool draw(const Draws& d, Complex* z, double& weight) const {
    bool fiber_route = has_fiber && d.u(0) >= 0.5;
    if (!fiber_route) {
      for (int i = 0; i < n; ++i) z[i] = draw_coord(d, i);
      if (mode == Sampling::Uniform || mode == Sampling::Halton) {
        weight = 1.0;
        return true;
      }
    } else {
      for (int i = 0; i < n; ++i)
        if (i != pat.coord) z[i] = draw_coord(d, i);
      z[pat.coord] = 0.0;
      int base = 1 + 3 * n;
      double rho = va * std::pow(vb / va, d.u(base));
      double phi = 2.0 * kPi * d.u(base + 1);
      Complex v(rho * std::cos(phi), rho * std::sin(phi));
      Complex a = cA.eval(z), b = cB.eval(z);
      if (std::abs(a) < 1e-280) return false;
      Complex target = (v - b) / a;
      double r1 = std::pow(std::abs(target), 1.0 / pat.p);
      if (!(r1 <= radii[pat.coord])) return false;
      int branch = std::min(pat.p - 1, static_cast<int>(d.u(base + 2) * pat.p));
      double ang = (std::arg(target) + 2.0 * kPi * branch) / pat.p;
      z[pat.coord] = Complex(r1 * std::cos(ang), r1 * std::sin(ang));
    }
    double q = coord_density(z);
    if (has_fiber) q = 0.5 * q + 0.5 * fiber_density(z);
    weight = unif_density / q;
    return true;
  }
};

Sampling resolve_sampling(Sampling s, const SparsePolynomial* f) {
  if (s != Sampling::Auto) return s;
  if (f && detect_fiber_pattern(*f)) return Sampling::Fiber;
  return Sampling::LogRadial;
}

Proposal make_proposal(const SamplerConfig& cfg, int n, Sampling mode,
                       const SparsePolynomial* f, double region_lo,
                       double region_hi) {
  Proposal p;
  p.mode = mode;
  p.n = n;
  p.unif_density = 1.0;
  for (int i = 0; i < n; ++i) {
    double r = cfg.domain.bounding_radius(i);
    p.radii[i] = r;
    p.unif_density /= kPi * r * r;
  }
  p.rmin = cfg.radial_floor;
  // Below ~1e-150 the log-radial density 1/(2 pi r^2 log) underflows while
  // singular integrands overflow, poisoning the sums with inf * 0.
  require(p.rmin >= 1e-150, ErrorCode::BadConfig,
          "radial_floor must be at least 1e-150");
  for (int i = 0; i < n; ++i)
    require(p.rmin < p.radii[i], ErrorCode::BadConfig,
            "radial_floor must be below every domain radius");
  if (mode == Sampling::Fiber) {
    require(f != nullptr, ErrorCode::BadConfig, "fiber sampling needs a polynomial");
    require(cfg.domain.kind == PolyDomain::Kind::Polydisc, ErrorCode::BadConfig,
            "fiber sampling is defined on polydisc domains");
    auto pat = detect_fiber_pattern(*f);
    require(pat.has_value(), ErrorCode::BadConfig,
            "polynomial is not solvable in a single coordinate");
    p.has_fiber = true;
    p.pat = *pat;
    p.cf = compile(*f);
    p.cA = compile(pat->A);
    p.cB = compile(pat->B);
    p.cdfi = compile(f->partial(pat->coord));
    std::vector<double> rad(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rad[static_cast<size_t>(i)] = p.radii[i];
    double bound = f->sup_bound(rad) * (1.0 + 1e-9);
    p.vb = region_hi > 0.0 ? std::min(region_hi * (1.0 + 1e-9), bound) : bound;
    // Without a region floor, reach down as far as the configured radial
    // floor; the value density stays representable for |v| >= ~1e-150.
    p.va = region_lo > 0.0 ? region_lo * (1.0 - 1e-9)
                           : p.vb * std::min(1e-18, std::max(p.rmin, 1e-160));
    if (!(p.va > 0.0 && p.va < p.vb)) {
      // The requested value range lies above sup |f| (an empty region);
      // plain log-radial draws still give an unbiased (zero) estimate.
      p.mode = Sampling::LogRadial;
      p.has_fiber = false;
    }
  }
  return p;
}

// --- generic driver ---------------------------------------------------------

enum class Outcome { Used, Rejected };

struct BlockAccum {
  double sum = 0.0, sum_c = 0.0;
  double sq = 0.0, sq_c = 0.0;
  double ymin = 0.0, ymax = 0.0;
  bool any = false;
  long long used = 0, rejected = 0, hits = 0;
};

void kahan_add(double& s, double& c, double x) {
  double y = x - c;
  double t = s + y;
  c = (t - s) - y;
  s = t;
}

void validate_config(const SamplerConfig& cfg, int n) {
  require(cfg.n_samples >= 1000, ErrorCode::BadConfig, "need n_samples >= 1000");
  require(cfg.n_workers >= 1, ErrorCode::BadConfig, "need n_workers >= 1");
  cfg.domain.validate(n);
}

SamplerConfig resolve_domain(const SamplerConfig& cfg, int n) {
  SamplerConfig c = cfg;
  if (c.domain.radii.empty()) c.domain = PolyDomain::unit_polydisc(n);
  validate_config(c, n);
  return c;
}

// g(z, weight, out_y) -> Outcome; out_y excludes the reference volume factor.
template <class G>
EstimateResult run_mc(const SamplerConfig& cfg, const Proposal& prop, G&& g) {
  const long long N = cfg.n_samples;
  const int n = prop.n;
  const int stride = 3 * n + 4;
  const double v_ref = cfg.domain.bounding_polydisc_volume(n);
  const bool ball = cfg.domain.kind == PolyDomain::Kind::Ball;
  const double ball_r2 = ball ? cfg.domain.radii[0] * cfg.domain.radii[0] : 0.0;

  const long long n_blocks = (N + kBlock - 1) / kBlock;
  std::vector<BlockAccum> acc(static_cast<size_t>(n_blocks));
  std::atomic<long long> next_block{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto run_blocks = [&](Complex* z) {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      long long b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      BlockAccum a;
      long long lo = b * kBlock, hi = std::min(N, lo + kBlock);
      for (long long s = lo; s < hi; ++s) {
        Draws d{cfg.seed, s, stride};
        double weight = 1.0;
        if (!prop.draw(d, z, weight)) {
          ++a.rejected;
          continue;
        }
        if (ball) {
          double r2 = 0.0;
          for (int i = 0; i < n; ++i) r2 += std::norm(z[i]);
          if (r2 > ball_r2) {
            ++a.rejected;
            continue;
          }
        }
        double y = 0.0;
        if (g(z, y) == Outcome::Rejected) {
          ++a.rejected;
          continue;
        }
        ++a.used;
        y *= weight * v_ref;
        if (y != 0.0) ++a.hits;
        if (!a.any) {
          a.ymin = a.ymax = y;
          a.any = true;
        } else {
          a.ymin = std::min(a.ymin, y);
          a.ymax = std::max(a.ymax, y);
        }
        kahan_add(a.sum, a.sum_c, y);
        kahan_add(a.sq, a.sq_c, y * y);
      }
      acc[static_cast<size_t>(b)] = a;
    }
  };

  auto worker = [&]() {
    Complex z[kMaxDim];
    try {
      run_blocks(z);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      failed.store(true);
    }
  };

  int workers = static_cast<int>(std::min<long long>(cfg.n_workers, n_blocks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Fixed fold order over blocks keeps results identical for any n_workers.
  double sum = 0.0, sum_c = 0.0, sq = 0.0, sq_c = 0.0;
  double ymin = 0.0, ymax = 0.0;
  bool any = false;
  EstimateResult r;
  for (const BlockAccum& a : acc) {
    kahan_add(sum, sum_c, a.sum);
    kahan_add(sq, sq_c, a.sq);
    if (a.any) {
      ymin = any ? std::min(ymin, a.ymin) : a.ymin;
      ymax = any ? std::max(ymax, a.ymax) : a.ymax;
      any = true;
    }
    r.n_used += a.used;
    r.n_rejected += a.rejected;
    r.n_hits += a.hits;
  }
  double nd = static_cast<double>(N);
  r.value = sum / nd;
  // Constant contributions (e.g. the indicator accepting every sample) have
  // zero variance by definition; skip the cancellation-prone formula there.
  double var = (any && ymin == ymax && r.n_rejected == 0)
                   ? 0.0
                   : (sq - sum * sum / nd) / (nd - 1.0);
  r.std_error = std::sqrt(std::max(var, 0.0) / nd);
  if (prop.mode == Sampling::Halton) {
    r.std_error = 0.0;
    r.low_discrepancy = true;
  }
  return r;
}

double integrand_value(IntegrandSpec::Kind kind, double param, double m,
                       double g2, double hess_f) {
  double logf2 = 2.0 * std::log(m);  // < 0 on the admissible range
  double al1 = -logf2;
  switch (kind) {
    case IntegrandSpec::Kind::GradUSq:
    case IntegrandSpec::Kind::AbsG:
      return 4.0 * g2 / (m * m * al1 * al1);
    case IntegrandSpec::Kind::GradUP:
      return std::pow(2.0 * std::sqrt(g2) / (m * al1), param);
    case IntegrandSpec::Kind::AbsGP:
      return std::pow(4.0 * g2 / (m * m * al1 * al1), param);
    case IntegrandSpec::Kind::GradVSq: {
      double L2 = std::log(al1);
      double d = m * al1 * L2 * L2;
      return 4.0 * g2 / (d * d);
    }
    case IntegrandSpec::Kind::AbsT: {
      double L2 = std::log(al1);
      return 4.0 * g2 / (m * m * al1 * al1 * L2 * L2) * (1.0 + 2.0 / L2);
    }
    case IntegrandSpec::Kind::A1Hess: {
      double L2 = std::log(al1);
      return hess_f / (m * al1 * L2 * L2);
    }
    case IntegrandSpec::Kind::A2Sum: {
      double L2 = std::log(al1);
      return g2 / (m * m * al1 * L2 * L2);
    }
    case IntegrandSpec::Kind::A3Sum: {
      double L2 = std::log(al1);
      return g2 / (m * m * al1 * al1 * L2 * L2);
    }
    case IntegrandSpec::Kind::A4Sum: {
      double L2 = std::log(al1);
      return 2.0 * g2 / (m * m * al1 * al1 * L2 * L2 * L2);
    }
    case IntegrandSpec::Kind::InvFP:
      return std::pow(m, -param);
    case IntegrandSpec::Kind::LogDerivP:
      return std::pow(std::sqrt(g2) / m, param);
    case IntegrandSpec::Kind::GradSqInvFP:
      return g2 * std::pow(m, -param);
  }
  return 0.0;
}

}  // namespace

bool IntegrandSpec::needs_iterated_log() const {
  switch (kind) {
    case Kind::GradVSq:
    case Kind::AbsT:
    case Kind::A1Hess:
    case Kind::A2Sum:
    case Kind::A3Sum:
    case Kind::A4Sum:
      return true;
    default:
      return false;
  }
}

bool IntegrandSpec::needs_single_log() const {
  switch (kind) {
    case Kind::GradUSq:
    case Kind::GradUP:
    case Kind::AbsG:
    case Kind::AbsGP:
      return true;
    default:
      return false;
  }
}

const char* IntegrandSpec::name() const {
  switch (kind) {
    case Kind::GradUSq: return "grad_u_sq";
    case Kind::GradUP: return "grad_u_p";
    case Kind::GradVSq: return "grad_v_sq";
    case Kind::AbsG: return "abs_g";
    case Kind::AbsGP: return "abs_g_p";
    case Kind::AbsT: return "abs_t";
    case Kind::A1Hess: return "a1_hess";
    case Kind::A2Sum: return "a2_sum";
    case Kind::A3Sum: return "a3_sum";
    case Kind::A4Sum: return "a4_sum";
    case Kind::InvFP: return "inv_f_p";
    case Kind::LogDerivP: return "log_deriv_p";
    case Kind::GradSqInvFP: return "grad_sq_inv_f_p";
  }
  return "?";
}

bool fiber_solvable(const SparsePolynomial& f) {
  return detect_fiber_pattern(f).has_value();
}

EstimateResult mc_sublevel_volume(const SparsePolynomial& f, double eps,
                                  const SamplerConfig& cfg_in) {
  require(eps > 0.0 && std::isfinite(eps), ErrorCode::BadConfig, "eps must be positive");
  require(!f.is_constant(), ErrorCode::BadConfig, "subject must be nonconstant");
  SamplerConfig cfg = resolve_domain(cfg_in, f.dimension());
  Sampling mode = resolve_sampling(cfg.sampling, &f);
  Proposal prop = make_proposal(cfg, f.dimension(), mode, &f, 0.0, eps);
  CPoly cf = compile(f);
  return run_mc(cfg, prop, [&](const Complex* z, double& y) {
    y = std::abs(cf.eval(z)) < eps ? 1.0 : 0.0;
    return Outcome::Used;
  });
}

EstimateResult mc_shell_surface_integral(const SparsePolynomial& f,
                                         const ShellSpec& shell,
                                         WeightKind weight,
                                         const SamplerConfig& cfg_in,
                                         const CustomWeight& custom) {
  require(shell.eps > 0.0 && shell.half_width > 0.0 &&
              shell.half_width < shell.eps,
          ErrorCode::BadConfig, "need 0 < half_width < eps");
  require(weight != WeightKind::Custom || static_cast<bool>(custom),
          ErrorCode::BadConfig, "custom weight needs an evaluator");
  require(!f.is_constant(), ErrorCode::BadConfig, "subject must be nonconstant");
  SamplerConfig cfg = resolve_domain(cfg_in, f.dimension());
  Sampling mode = resolve_sampling(cfg.sampling, &f);
  double lo = shell.eps - shell.half_width, hi = shell.eps + shell.half_width;
  Proposal prop = make_proposal(cfg, f.dimension(), mode, &f, lo, hi);
  PolyBundle b = PolyBundle::make(f, false);
  double inv2d = 0.5 / shell.half_width;
  int n = f.dimension();
  EstimateResult r = run_mc(cfg, prop, [&](const Complex* z, double& y) {
    double m = std::abs(b.f.eval(z));
    if (m <= lo || m >= hi) {
      y = 0.0;
      return Outcome::Used;
    }
    double w;
    if (weight == WeightKind::Unit) {
      w = std::sqrt(b.grad_sq(z));
    } else if (weight == WeightKind::GradF) {
      w = b.grad_sq(z);
    } else {
      w = custom(std::span<const Complex>(z, static_cast<size_t>(n))) *
          std::sqrt(b.grad_sq(z));
    }
    y = w * inv2d;
    return Outcome::Used;
  });
  if (r.n_hits == 0)
    fail(ErrorCode::DegenerateShell, "no sample landed in the shell");
  return r;
}

EstimateResult mc_sublevel_energy(const SparsePolynomial& f, double eps,
                                  double p, const SamplerConfig& cfg_in) {
  require(eps > 0.0 && p > 0.0, ErrorCode::BadConfig, "need eps > 0 and p > 0");
  require(!f.is_constant(), ErrorCode::BadConfig, "subject must be nonconstant");
  SamplerConfig cfg = resolve_domain(cfg_in, f.dimension());
  Sampling mode = resolve_sampling(cfg.sampling, &f);
  Proposal prop = make_proposal(cfg, f.dimension(), mode, &f, 0.0, eps);
  PolyBundle b = PolyBundle::make(f, false);
  bool square = p == 2.0;
  return run_mc(cfg, prop, [&](const Complex* z, double& y) {
    double m = std::abs(b.f.eval(z));
    if (m >= eps) {
      y = 0.0;
      return Outcome::Used;
    }
    double g2 = b.grad_sq(z);
    y = square ? g2 : std::pow(g2, 0.5 * p);
    return Outcome::Used;
  });
}

EstimateResult mc_graph_fiber_volume(const MonomialSpec& A, Complex w,
                                     const SamplerConfig& cfg_in) {
  size_t nsz = A.exponents.size();
  require(nsz >= 2, ErrorCode::BadConfig, "need at least two coordinates");
  require(A.exponents.back() >= 1, ErrorCode::BadConfig, "last exponent must be >= 1");
  require(std::abs(w) > 0.0, ErrorCode::BadConfig, "need |w| > 0");
  int base_dim = static_cast<int>(nsz) - 1;
  SamplerConfig cfg = cfg_in;
  cfg.domain = PolyDomain::unit_polydisc(base_dim);
  validate_config(cfg, base_dim);
  Sampling mode = cfg.sampling == Sampling::Auto || cfg.sampling == Sampling::Fiber
                      ? Sampling::LogRadial
                      : cfg.sampling;
  Proposal prop = make_proposal(cfg, base_dim, mode, nullptr, 0.0, 0.0);
  return run_mc(cfg, prop, [&](const Complex* z, double& y) {
    std::span<const Complex> zp(z, static_cast<size_t>(base_dim));
    if (!try_graph_volume_integrand(A, w, zp, y)) return Outcome::Rejected;
    return Outcome::Used;
  });
}

EstimateResult mc_weighted_integral(const SparsePolynomial& f,
                                    const IntegrandSpec& integrand,
                                    const RegionSpec& region,
                                    const SamplerConfig& cfg_in) {
  require(!f.is_constant(), ErrorCode::BadConfig, "subject must be nonconstant");
  if (region.kind == RegionSpec::Kind::FAnnulus)
    require(region.lo > 0.0 && region.hi > region.lo, ErrorCode::BadConfig,
            "annulus needs 0 < lo < hi");
  if (region.kind == RegionSpec::Kind::SubBall)
    require(region.radius > 0.0, ErrorCode::BadConfig, "sub-ball needs radius > 0");
  if (integrand.kind == IntegrandSpec::Kind::GradUP ||
      integrand.kind == IntegrandSpec::Kind::AbsGP ||
      integrand.kind == IntegrandSpec::Kind::LogDerivP)
    require(integrand.param > 0.0, ErrorCode::BadConfig, "need p > 0");
  SamplerConfig cfg = resolve_domain(cfg_in, f.dimension());
  Sampling mode = resolve_sampling(cfg.sampling, &f);
  double lo = region.kind == RegionSpec::Kind::FAnnulus ? region.lo : 0.0;
  double hi = region.kind == RegionSpec::Kind::FAnnulus ? region.hi : 0.0;
  Proposal prop = make_proposal(cfg, f.dimension(), mode, &f, lo, hi);
  bool with_hessian = integrand.kind == IntegrandSpec::Kind::A1Hess;
  PolyBundle b = PolyBundle::make(f, with_hessian);
  int n = f.dimension();
  double rball2 = region.radius * region.radius;
  return run_mc(cfg, prop, [&](const Complex* z, double& y) {
    if (region.kind == RegionSpec::Kind::SubBall) {
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) r2 += std::norm(z[i]);
      if (r2 >= rball2) {
        y = 0.0;
        return Outcome::Used;
      }
    }
    double m = std::abs(b.f.eval(z));
    if (m < kZeroFloor) return Outcome::Rejected;
    if (region.kind == RegionSpec::Kind::FAnnulus && (m < region.lo || m >= region.hi)) {
      y = 0.0;
      return Outcome::Used;
    }
    if (integrand.needs_iterated_log() && m >= kHalfNorm)
      fail(ErrorCode::Normalization,
           "integrand needs log(-log|f|^2) > 0; rescale so sup|f| < 1/2");
    if (integrand.needs_single_log() && m >= 1.0)
      fail(ErrorCode::Normalization, "integrand needs |f| < 1; rescale f");
    double g2 = b.grad_sq(z);
    double hf = with_hessian ? b.hessian_frobenius(z) : 0.0;
    y = integrand_value(integrand.kind, integrand.param, m, g2, hf);
    return Outcome::Used;
  });
}

}  // namespace lslab

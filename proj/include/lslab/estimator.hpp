#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "lslab/poly.hpp"

namespace lslab {

/// Sampling strategy for the Monte-Carlo drivers.
///
/// Uniform   — plain uniform draws on the bounding polydisc (the default).
/// LogRadial — per-coordinate mixture of uniform and log-uniform radius;
///             importance weights stay bounded and small-|z_i| regions are
///             covered down to `radial_floor`.
/// Fiber     — for polynomials of the form z_i^p A(z') + B(z'): draws the
///             value v = f(z) log-radially and solves for z_i, mixed with the
///             LogRadial proposal. This is what makes thin neighborhoods of
///             Z(f) and deep dyadic annuli reachable at realistic sample
///             counts. Densities are exact, so estimates remain unbiased.
/// Auto      — Fiber when the polynomial is solvable in one coordinate,
///             LogRadial otherwise.
/// Halton    — deterministic low-discrepancy stream for smoke tests;
///             std_error is reported as 0 and the result is flagged.
enum class Sampling { Uniform, LogRadial, Fiber, Auto, Halton };

struct SamplerConfig {
  std::uint64_t seed = 0;
  long long n_samples = 1'000'000;
  int n_workers = 1;
  PolyDomain domain;  // empty radii: resolved to the unit polydisc
  Sampling sampling = Sampling::Uniform;
  /// Smallest coordinate radius the log-radial component reaches. The
  /// default suits dyadic-annuli work (|f| down to ~2^-20); integrands whose
  /// mass decays only like 1/|log r| near Z(f) need a much deeper floor
  /// (values down to ~1e-150 keep all densities representable).
  double radial_floor = 1e-15;
};

struct EstimateResult {
  double value = 0.0;
  double std_error = 0.0;
  long long n_used = 0;      // samples evaluated (n_used + n_rejected = n_samples)
  long long n_rejected = 0;  // below the |f| floor, outside ball/base, unusable draw
  long long n_hits = 0;      // samples with a nonzero contribution
  bool low_discrepancy = false;
};

/// Thin shell around the level eps used by the surface-integral estimator.
struct ShellSpec {
  double eps = 0.0;
  double half_width = 0.0;  // delta, 0 < delta < eps
};

enum class WeightKind { Unit, GradF, Custom };
using CustomWeight = std::function<double(std::span<const Complex>)>;

/// Nonnegative integrands built from f, |grad f| and the iterated-log
/// potentials; `param` carries p or delta where applicable.
struct IntegrandSpec {
  enum class Kind {
    GradUSq,      // |grad u|^2,  u = log(-log|f|^2)
    GradUP,       // |grad u|^p
    GradVSq,      // |grad v|^2,  v = 1/log(-log|f|^2)
    AbsG,         // |Laplacian u|
    AbsGP,        // |Laplacian u|^p
    AbsT,         // Laplacian v  (nonnegative under |f| < 1/2)
    A1Hess,       // |Hess f|_F / (|f| |log|f|^2| (log(-log|f|^2))^2)
    A2Sum,        // |grad f|^2 / (|f|^2 |log|f|^2| (log(-log|f|^2))^2)
    A3Sum,        // |grad f|^2 / (|f|^2 (log|f|^2)^2 (log(-log|f|^2))^2)
    A4Sum,        // 2 |grad f|^2 / (|f|^2 (log|f|^2)^2 (log(-log|f|^2))^3)
    InvFP,        // |f|^{-delta}
    LogDerivP,    // |grad f / f|^p
    GradSqInvFP,  // |grad f|^2 / |f|^delta
  };
  Kind kind = Kind::GradUSq;
  double param = 0.0;

  /// True for kinds built from log(-log|f|^2); they require |f| < e^{-1/2}.
  bool needs_iterated_log() const;
  /// True for kinds built from log|f|^2 only; they require |f| < 1.
  bool needs_single_log() const;
  const char* name() const;
};

struct RegionSpec {
  enum class Kind { Domain, SubBall, FAnnulus };
  Kind kind = Kind::Domain;
  double radius = 0.0;       // SubBall: {|z| < radius}
  double lo = 0.0, hi = 0.0; // FAnnulus: {lo <= |f| < hi}

  static RegionSpec domain() { return {}; }
  static RegionSpec sub_ball(double r) { return {Kind::SubBall, r, 0.0, 0.0}; }
  static RegionSpec f_annulus(double lo, double hi) {
    return {Kind::FAnnulus, 0.0, lo, hi};
  }
};

/// Vol{z in domain : |f(z)| < eps} = bounding volume x mean(indicator).
EstimateResult mc_sublevel_volume(const SparsePolynomial& f, double eps,
                                  const SamplerConfig& cfg);

/// Thin-shell surface integral over {|f| = eps}:
/// (1/2 delta) int_{eps-delta < |f| < eps+delta} w |grad f| dV, where the
/// coarea Jacobian |grad|f|| = |grad f| is included automatically. Weight
/// Unit estimates the surface area; GradF estimates int |grad f| dS (the
/// integrand becomes |grad f|^2).
EstimateResult mc_shell_surface_integral(const SparsePolynomial& f,
                                         const ShellSpec& shell,
                                         WeightKind weight,
                                         const SamplerConfig& cfg,
                                         const CustomWeight& custom = {});

/// int_{|f| < eps} |grad f|^p dV.
EstimateResult mc_sublevel_energy(const SparsePolynomial& f, double eps,
                                  double p, const SamplerConfig& cfg);

/// Fiber volume of {z^A = w} in the unit polydisc via the graph formula,
/// integrating over the base polydisc with rejection outside the admissible
/// region.
EstimateResult mc_graph_fiber_volume(const MonomialSpec& A, Complex w,
                                     const SamplerConfig& cfg);

/// int_{region} integrand dV with samples under the |f| evaluation floor
/// (1e-300) counted in n_rejected.
EstimateResult mc_weighted_integral(const SparsePolynomial& f,
                                    const IntegrandSpec& integrand,
                                    const RegionSpec& region,
                                    const SamplerConfig& cfg);

/// True when f = z_i^p A(z') + B(z') for some coordinate i, i.e. the value
/// fiber can be sampled exactly. Holds for every monomial and for the
/// two-term families z1^p - z2^q.
bool fiber_solvable(const SparsePolynomial& f);

}  // namespace lslab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lslab/estimator.hpp"
#include "lslab/poly.hpp"

namespace lslab {

/// Point evaluators for the singular potentials built from a holomorphic f:
///   U = log(-log|f|^2)          V = 1/log(-log|f|^2)
///   G = Laplacian U (<= 0)      T = Laplacian V (>= 0)
/// plus gradient norms and the four second-derivative pieces A1..A4 of V
/// (A1..A4 take a complex index pair (i, j)).
enum class SingularKind {
  U,
  V,
  G,
  T,
  GradUNorm,
  GradVNorm,
  A1,
  A2,
  A3,
  A4,
};

const char* singular_kind_name(SingularKind k);

/// Exact formula value at `point`; real kinds return a zero imaginary part.
/// Requires 0 < |f(point)| < 1/2 (callers rescale first).
Complex eval_singular(SingularKind kind, const SparsePolynomial& f,
                      std::span<const Complex> point, int i = 0, int j = 0);

/// Rescaling so that sup |c f| < 1/2 on the domain; the sup is estimated
/// from a fixed number of deterministic samples and c = 1/(4 sup).
struct RescaleRecord {
  double scale_c = 1.0;
  double sup_sample_abs = 0.0;
  long long n_probe = 0;
};

RescaleRecord estimate_rescale(const SparsePolynomial& f,
                               const SamplerConfig& cfg);

enum class Verdict { Convergent, Divergent, Inconclusive };

const char* verdict_name(Verdict v);

struct AnnulusTerm {
  int j = 0;
  double value = 0.0;
  double std_error = 0.0;
  long long n_used = 0;
  long long n_rejected = 0;
  long long n_hits = 0;
  bool empty = false;  // no sample landed in the annulus
};

/// Per-dyadic-annulus contributions of an integrand, with a deterministic
/// series verdict. Convergence: the last five term ratios all below 0.95
/// (the tail is then summed geometrically). Divergence: terms nondecreasing
/// over the last five steps within noise, or partial sums growing >= 10%
/// per step. Anything else is Inconclusive.
///
/// Terms are estimated by mc_weighted_integral on the annulus regions; a
/// Uniform sampling config is promoted to Auto, since uniform draws cannot
/// reach deep annuli (hit probability ~4^-j). Subjects needing |f| < 1/2
/// are rescaled first and the record is attached to the ledger.
struct AnnulusLedger {
  int j0 = 0, j1 = 0;
  std::vector<AnnulusTerm> terms;
  std::vector<double> partial_sums;
  Verdict verdict = Verdict::Inconclusive;
  double extrapolated_total = 0.0;  // meaningful only when Convergent
  std::optional<RescaleRecord> rescale;
  bool exploratory = false;  // subject outside the families with oracles
};

AnnulusLedger dyadic_integrability_test(const SparsePolynomial& f,
                                        const IntegrandSpec& integrand,
                                        int j0, int j1,
                                        const SamplerConfig& cfg);

/// Verdict computation on externally supplied terms (exposed for reuse and
/// for property tests).
void assemble_ledger_verdict(AnnulusLedger& ledger);

/// int_0^upper dt / (t^a |log t|^b (log|log t|)^c), for upper < 1/e.
/// Returns the value to relative accuracy ~1e-8 when the integral converges
/// and nullopt (divergent) otherwise.
std::optional<double> radial_reference_integral(double a, double b, double c,
                                                double upper);

/// Analytic convergence rule for the same family: converges iff a < 1, or
/// (a = 1 and b > 1), or (a = 1, b = 1, c > 1).
Verdict classify_convergence(double a, double b, double c);

}  // namespace lslab

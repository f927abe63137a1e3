#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "lslab/error.hpp"

namespace lslab {

using Complex = std::complex<double>;

/// Exponent vector (k_1, ..., k_n); ordered lexicographically as a map key so
/// term iteration order, and hence floating-point summation order, is fixed.
using MultiIndex = std::vector<int>;

struct Gradient {
  std::vector<Complex> components;
  double norm = 0.0;
};

/// Sparse polynomial over C^n with complex coefficients. Immutable in spirit:
/// all operations return new values, evaluation is pure and deterministic.
class SparsePolynomial {
 public:
  explicit SparsePolynomial(int dimension);

  int dimension() const { return dimension_; }
  const std::map<MultiIndex, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int max_exponent(int coord) const;

  /// Adds coeff * z^idx, summing with any existing term; exact zeros are
  /// dropped to keep the no-zero-terms invariant.
  void add_term(const MultiIndex& idx, Complex coeff);

  Complex evaluate(std::span<const Complex> point) const;
  Gradient gradient(std::span<const Complex> point) const;

  /// Frobenius norm of the matrix of complex second derivatives,
  /// sqrt(sum_{i,j} |d^2 f / dz_i dz_j|^2).
  double hessian_frobenius(std::span<const Complex> point) const;

  /// Formal partial derivative d/dz_i.
  SparsePolynomial partial(int coord) const;

  SparsePolynomial scaled(Complex c) const;
  SparsePolynomial operator+(const SparsePolynomial& o) const;
  SparsePolynomial operator-(const SparsePolynomial& o) const;
  SparsePolynomial operator*(const SparsePolynomial& o) const;
  SparsePolynomial pow(int k) const;

  bool operator==(const SparsePolynomial& o) const {
    return dimension_ == o.dimension_ && terms_ == o.terms_;
  }

  /// Upper bound for sup |f| over the polydisc with the given radii:
  /// sum of |coeff| * prod r_i^{k_i}.
  double sup_bound(std::span<const double> radii) const;

 private:
  void check_point(std::span<const Complex> point) const;
  int dimension_;
  std::map<MultiIndex, Complex> terms_;
};

SparsePolynomial make_monomial(int dimension, const MultiIndex& idx,
                               Complex coeff = 1.0);

/// Exponent vector of a monomial z^A with at least one positive entry.
struct MonomialSpec {
  MultiIndex exponents;
};

struct PolyDomain {
  enum class Kind { Polydisc, Ball };
  Kind kind = Kind::Polydisc;
  /// Per-coordinate radii for a polydisc; a single radius for a ball.
  std::vector<double> radii;

  static PolyDomain unit_polydisc(int dimension) {
    return PolyDomain{Kind::Polydisc, std::vector<double>(dimension, 1.0)};
  }
  static PolyDomain ball(double radius) {
    return PolyDomain{Kind::Ball, {radius}};
  }

  void validate(int dimension) const;
  /// Radius of the bounding polydisc in coordinate i.
  double bounding_radius(int i) const {
    return kind == Kind::Polydisc ? radii[static_cast<size_t>(i)] : radii[0];
  }
  /// Lebesgue volume of the bounding polydisc (prod pi r_i^2).
  double bounding_polydisc_volume(int dimension) const;
};

}  // namespace lslab

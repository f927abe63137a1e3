#include "lslab/poly.hpp"

#include <algorithm>
#include <cmath>

namespace lslab {

namespace {

Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  while (k-- > 0) r *= z;
  return r;
}

}  // namespace

SparsePolynomial::SparsePolynomial(int dimension) : dimension_(dimension) {
  require(dimension >= 1, ErrorCode::Domain, "dimension must be >= 1");
}

bool SparsePolynomial::is_constant() const {
  for (const auto& [idx, c] : terms_) {
    for (int k : idx)
      if (k != 0) return false;
  }
  return true;
}

int SparsePolynomial::total_degree() const {
  int deg = 0;
  for (const auto& [idx, c] : terms_) {
    int d = 0;
    for (int k : idx) d += k;
    deg = std::max(deg, d);
  }
  return deg;
}

int SparsePolynomial::max_exponent(int coord) const {
  int m = 0;
  for (const auto& [idx, c] : terms_) m = std::max(m, idx[static_cast<size_t>(coord)]);
  return m;
}

void SparsePolynomial::add_term(const MultiIndex& idx, Complex coeff) {
  require(static_cast<int>(idx.size()) == dimension_, ErrorCode::DimensionMismatch,
          "multi-index length does not match polynomial dimension");
  for (int k : idx)
    require(k >= 0, ErrorCode::Domain, "negative exponent in multi-index");
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    if (coeff != Complex(0.0, 0.0)) terms_.emplace(idx, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

void SparsePolynomial::check_point(std::span<const Complex> point) const {
  require(static_cast<int>(point.size()) == dimension_, ErrorCode::DimensionMismatch,
          "point length does not match polynomial dimension");
}

Complex SparsePolynomial::evaluate(std::span<const Complex> point) const {
  check_point(point);
  Complex acc = 0.0;
  for (const auto& [idx, c] : terms_) {
    Complex m = c;
    for (int i = 0; i < dimension_; ++i) m *= ipow(point[static_cast<size_t>(i)], idx[static_cast<size_t>(i)]);
    acc += m;
  }
  return acc;
}

Gradient SparsePolynomial::gradient(std::span<const Complex> point) const {
  check_point(point);
  Gradient g;
  g.components.assign(static_cast<size_t>(dimension_), Complex(0.0, 0.0));
  for (const auto& [idx, c] : terms_) {
    // One pass of coordinate powers per term, reused for every component.
    for (int j = 0; j < dimension_; ++j) {
      int kj = idx[static_cast<size_t>(j)];
      if (kj == 0) continue;
      Complex m = c * static_cast<double>(kj);
      for (int i = 0; i < dimension_; ++i) {
        int k = idx[static_cast<size_t>(i)];
        if (i == j) k -= 1;
        m *= ipow(point[static_cast<size_t>(i)], k);
      }
      g.components[static_cast<size_t>(j)] += m;
    }
  }
  double s = 0.0;
  for (const Complex& v : g.components) s += std::norm(v);
  g.norm = std::sqrt(s);
  return g;
}

double SparsePolynomial::hessian_frobenius(std::span<const Complex> point) const {
  check_point(point);
  double s = 0.0;
  for (int i = 0; i < dimension_; ++i) {
    SparsePolynomial di = partial(i);
    for (int j = 0; j < dimension_; ++j) s += std::norm(di.partial(j).evaluate(point));
  }
  return std::sqrt(s);
}

SparsePolynomial SparsePolynomial::partial(int coord) const {
  require(coord >= 0 && coord < dimension_, ErrorCode::Domain, "bad coordinate");
  SparsePolynomial d(dimension_);
  for (const auto& [idx, c] : terms_) {
    int k = idx[static_cast<size_t>(coord)];
    if (k == 0) continue;
    MultiIndex lowered = idx;
    lowered[static_cast<size_t>(coord)] = k - 1;
    d.add_term(lowered, c * static_cast<double>(k));
  }
  return d;
}

SparsePolynomial SparsePolynomial::scaled(Complex c) const {
  SparsePolynomial r(dimension_);
  for (const auto& [idx, v] : terms_) r.add_term(idx, v * c);
  return r;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& o) const {
  require(dimension_ == o.dimension_, ErrorCode::DimensionMismatch, "dimension mismatch");
  SparsePolynomial r = *this;
  for (const auto& [idx, v] : o.terms_) r.add_term(idx, v);
  return r;
}

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& o) const {
  return *this + o.scaled(-1.0);
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& o) const {
  require(dimension_ == o.dimension_, ErrorCode::DimensionMismatch, "dimension mismatch");
  SparsePolynomial r(dimension_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      MultiIndex s(a.size());
      for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      r.add_term(s, ca * cb);
    }
  return r;
}

SparsePolynomial SparsePolynomial::pow(int k) const {
  require(k >= 0, ErrorCode::Domain, "negative power");
  SparsePolynomial r(dimension_);
  r.add_term(MultiIndex(static_cast<size_t>(dimension_), 0), 1.0);
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

double SparsePolynomial::sup_bound(std::span<const double> radii) const {
  double s = 0.0;
  for (const auto& [idx, c] : terms_) {
    double m = std::abs(c);
    for (int i = 0; i < dimension_; ++i)
      m *= std::pow(radii[static_cast<size_t>(i)], idx[static_cast<size_t>(i)]);
    s += m;
  }
  return s;
}

SparsePolynomial make_monomial(int dimension, const MultiIndex& idx, Complex coeff) {
  SparsePolynomial p(dimension);
  p.add_term(idx, coeff);
  return p;
}

void PolyDomain::validate(int dimension) const {
  if (kind == Kind::Polydisc) {
    require(static_cast<int>(radii.size()) == dimension, ErrorCode::BadConfig,
            "polydisc radii count must equal dimension");
  } else {
    require(radii.size() == 1, ErrorCode::BadConfig, "ball takes a single radius");
  }
  for (double r : radii)
    require(r > 0.0 && std::isfinite(r), ErrorCode::BadConfig, "radii must be positive");
}

double PolyDomain::bounding_polydisc_volume(int dimension) const {
  double v = 1.0;
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < dimension; ++i) {
    double r = bounding_radius(i);
    v *= pi * r * r;
  }
  return v;
}

}  // namespace lslab

#pragma once

#include <string>

#include "lslab/poly.hpp"

namespace lslab {

/// Parses the polynomial JSON schema
///   {"dimension": n, "terms": [{"exponents": [..], "coeff": [re, im]}, ...]}
/// Duplicate exponent lists are summed; exact zero coefficients are dropped.
SparsePolynomial parse_polynomial_json(const std::string& text);

/// Parses shorthand like "z1^2 - z2^3" or "(1+2i) z1 z2^4 + 0.5".
/// Grammar: + - * ^ with implicit multiplication by juxtaposition,
/// parentheses, decimal/scientific literals, the imaginary unit i, and
/// variables z1, z2, ... The dimension is the largest variable index unless
/// `min_dimension` is larger.
SparsePolynomial parse_polynomial_shorthand(const std::string& text,
                                            int min_dimension = 0);

/// JSON or shorthand, decided by the first non-space character.
SparsePolynomial parse_polynomial(const std::string& text, int min_dimension = 0);

/// Canonical JSON emission (terms in lexicographic exponent order);
/// parse(emit(p)) == p.
std::string emit_polynomial_json(const SparsePolynomial& p);

}  // namespace lslab

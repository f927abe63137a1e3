#include "lslab/parse.hpp"

#include <cctype>
#include <cstdlib>

#include <json.hpp>

namespace lslab {

namespace {

using nlohmann::json;

class ShorthandParser {
 public:
  ShorthandParser(const std::string& text, int dim)
      : text_(text), dim_(dim) {}

  SparsePolynomial parse() {
    SparsePolynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail(ErrorCode::ParseError,
           "unexpected character at offset " + std::to_string(pos_));
    return p;
  }

 private:
  SparsePolynomial parse_expr() {
    SparsePolynomial acc = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc = acc + parse_term();
      } else if (peek() == '-') {
        ++pos_;
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  SparsePolynomial parse_term() {
    SparsePolynomial acc = parse_factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * parse_factor();
      } else if (c == '(' || c == 'z' || c == 'i' || std::isdigit(c) || c == '.') {
        acc = acc * parse_factor();  // juxtaposition
      } else {
        return acc;
      }
    }
  }

  SparsePolynomial parse_factor() {
    SparsePolynomial base = parse_base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      size_t start = pos_;
      while (std::isdigit(peek())) ++pos_;
      if (start == pos_) fail(ErrorCode::ParseError, "expected integer exponent after ^");
      int e = std::atoi(text_.substr(start, pos_ - start).c_str());
      return base.pow(e);
    }
    return base;
  }

  SparsePolynomial parse_base() {
    skip_ws();
    char c = peek();
    if (c == '-') {
      ++pos_;
      return parse_factor().scaled(-1.0);
    }
    if (c == '(') {
      ++pos_;
      SparsePolynomial p = parse_expr();
      skip_ws();
      if (peek() != ')') fail(ErrorCode::ParseError, "missing ')'");
      ++pos_;
      return p;
    }
    if (c == 'z') {
      ++pos_;
      size_t start = pos_;
      while (std::isdigit(peek())) ++pos_;
      int index = start == pos_ ? 1 : std::atoi(text_.substr(start, pos_ - start).c_str());
      if (index < 1 || index > dim_)
        fail(ErrorCode::ParseError, "variable index out of range: z" + std::to_string(index));
      MultiIndex m(static_cast<size_t>(dim_), 0);
      m[static_cast<size_t>(index - 1)] = 1;
      return make_monomial(dim_, m);
    }
    if (c == 'i') {
      ++pos_;
      return constant(Complex(0.0, 1.0));
    }
    if (std::isdigit(c) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      pos_ += static_cast<size_t>(end - begin);
      if (peek() == 'i') {  // literal like 2i
        ++pos_;
        return constant(Complex(0.0, v));
      }
      return constant(Complex(v, 0.0));
    }
    fail(ErrorCode::ParseError, "unexpected character in polynomial expression");
  }

  SparsePolynomial constant(Complex v) {
    SparsePolynomial p(dim_);
    p.add_term(MultiIndex(static_cast<size_t>(dim_), 0), v);
    return p;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  int dim_;
  size_t pos_ = 0;
};

int scan_dimension(const std::string& text) {
  int dim = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'z') continue;
    size_t j = i + 1;
    int v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      v = v * 10 + (text[j] - '0');
      ++j;
    }
    dim = std::max(dim, j == i + 1 ? 1 : v);
  }
  return dim;
}

}  // namespace

SparsePolynomial parse_polynomial_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("terms"))
    fail(ErrorCode::ParseError, "expected {\"dimension\": n, \"terms\": [...]}");
  int dim = 0;
  try {
    dim = doc["dimension"].get<int>();
  } catch (const json::exception&) {
    fail(ErrorCode::ParseError, "field 'dimension' must be an integer");
  }
  if (dim < 1) fail(ErrorCode::ParseError, "dimension must be >= 1");
  SparsePolynomial p(dim);
  if (!doc["terms"].is_array())
    fail(ErrorCode::ParseError, "field 'terms' must be an array");
  size_t k = 0;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
      fail(ErrorCode::ParseError,
           "term " + std::to_string(k) + ": expected {\"exponents\": [...], \"coeff\": [re, im]}");
    MultiIndex idx;
    for (const auto& e : t["exponents"]) {
      if (!e.is_number_integer() || e.get<int>() < 0)
        fail(ErrorCode::ParseError, "term " + std::to_string(k) + ": exponents must be >= 0");
      idx.push_back(e.get<int>());
    }
    if (static_cast<int>(idx.size()) != dim)
      fail(ErrorCode::ParseError,
           "term " + std::to_string(k) + ": exponent list length != dimension");
    const auto& c = t["coeff"];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      fail(ErrorCode::ParseError, "term " + std::to_string(k) + ": coeff must be [re, im]");
    p.add_term(idx, Complex(c[0].get<double>(), c[1].get<double>()));
    ++k;
  }
  return p;
}

SparsePolynomial parse_polynomial_shorthand(const std::string& text, int min_dimension) {
  int dim = std::max(scan_dimension(text), std::max(min_dimension, 1));
  return ShorthandParser(text, dim).parse();
}

SparsePolynomial parse_polynomial(const std::string& text, int min_dimension) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_polynomial_json(text);
    break;
  }
  return parse_polynomial_shorthand(text, min_dimension);
}

std::string emit_polynomial_json(const SparsePolynomial& p) {
  nlohmann::ordered_json doc;
  doc["dimension"] = p.dimension();
  doc["terms"] = nlohmann::ordered_json::array();
  for (const auto& [idx, c] : p.terms()) {
    nlohmann::ordered_json t;
    t["exponents"] = idx;
    t["coeff"] = {c.real(), c.imag()};
    doc["terms"].push_back(t);
  }
  return doc.dump();
}

}  // namespace lslab

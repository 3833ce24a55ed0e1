#pragma once

#include "novikov/rational.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace novikov {

// Power product of named parameters, stored sorted by name with positive exponents.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned exponent(std::string_view var) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  bool divides(const Monomial& other) const;
  // other / *this; requires divides(other).
  Monomial cofactor_in(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string str() const;

 private:
  std::vector<Factor> factors_;
};

// Graded lexicographic order; variables ranked by name.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

using Assignment = std::map<std::string, Rational>;

// Multivariate polynomial over the rationals in canonical form: terms strictly
// decreasing in grlex order, no zero coefficients. A parameter-free Poly is a
// plain rational.
class Poly {
 public:
  struct Term {
    Monomial monomial;
    Rational coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Poly() = default;
  Poly(Rational c);  // NOLINT: rationals embed as constants
  template <std::integral I>
  Poly(I c) : Poly(Rational(c)) {}  // NOLINT
  static Poly variable(const std::string& name);
  static Poly monomial(Monomial m, Rational c);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  // Value of a constant polynomial; throws if parameters occur.
  Rational constant() const;
  unsigned total_degree() const;
  unsigned degree_in(std::string_view var) const;
  std::set<std::string> variables() const;
  const Term& leading() const { return terms_.front(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator/=(const Poly& o);  // exact division only; throws otherwise

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator/(Poly a, const Poly& b) { return a /= b; }
  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned e) const;
  Poly scaled(const Rational& c) const;

  Rational evaluate(const Assignment& at) const;
  // Replaces the listed variables; others are kept symbolic.
  Poly substitute(const std::map<std::string, Poly>& values) const;
  Poly substitute(const Assignment& values) const;

  // Coefficients of `var`^0, ^1, ... as polynomials in the remaining variables.
  std::vector<Poly> coefficients_in(const std::string& var) const;

  // Scales so the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::vector<Term> terms_;
};

// a / b when b divides a exactly in Q[params]; nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Rational roots of a univariate (or constant nonzero) polynomial, ascending,
// found by enumerating integer divisors of the extreme coefficients.
std::vector<Rational> rational_roots(const Poly& p);

// Error raised by the scalar-literal parser; `offset` is a byte offset in the input.
class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(std::size_t offset, const std::string& what) : std::invalid_argument(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ParsedPoly {
  Poly value;
  // Every identifier occurrence with its byte offset.
  std::vector<std::pair<std::string, std::size_t>> identifiers;
};

// Parses the scalar grammar: integers, fractions a/b, identifiers
// [a-zA-Z][a-zA-Z0-9]*, + - * ^ and parentheses. `^` takes nonnegative
// integer exponents; `/` only divides by nonzero rational constants.
ParsedPoly parse_poly(std::string_view text);

}  // namespace novikov

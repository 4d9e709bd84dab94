#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lagsg/rational.hpp"

namespace lagsg {

using Exponents = std::vector<std::uint32_t>;

// Graded-lex ordering used for storage and printing: higher total degree first,
// ties broken lexicographically with larger leading exponents first.
struct GradedLexOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Exact multivariate polynomial with rational coefficients over an ordered list
// of named variables. Zero coefficients are never stored.
//
// Binary operations require both operands to share the same variable list;
// moving between variable lists is explicit via `with_variables`.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexOrder>;

  Poly() = default;
  explicit Poly(std::vector<std::string> variables);

  static Poly constant(std::vector<std::string> variables, const Rational& value);
  static Poly variable(std::vector<std::string> variables, std::string_view name);
  static Poly monomial(std::vector<std::string> variables, Exponents exponents, const Rational& coeff);

  const std::vector<std::string>& variables() const { return variables_; }
  const TermMap& terms() const { return terms_; }
  std::size_t arity() const { return variables_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& exponents) const;

  std::optional<std::size_t> find_variable(std::string_view name) const;
  // Throws InvalidArgument for an unknown name.
  std::size_t index_of(std::string_view name) const;

  unsigned degree_in(std::size_t var) const;
  unsigned degree_in(std::string_view name) const { return degree_in(index_of(name)); }
  unsigned total_degree() const;
  // True when the polynomial does not involve variable `var`.
  bool independent_of(std::size_t var) const { return degree_in(var) == 0; }

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  Poly pow(unsigned exponent) const;

  Poly diff(std::size_t var) const;
  Poly diff(std::string_view name) const { return diff(index_of(name)); }
  // Antiderivative in `var` with zero constant of integration.
  Poly antiderivative(std::size_t var) const;
  Poly antiderivative(std::string_view name) const { return antiderivative(index_of(name)); }

  // Replace variable `var` by `value` (a polynomial over the same variable list).
  Poly substitute(std::size_t var, const Poly& value) const;
  Poly substitute(std::string_view name, const Poly& value) const { return substitute(index_of(name), value); }
  // Replace variable `var` by a constant. The variable stays in the list with degree 0.
  Poly substitute(std::size_t var, const Rational& value) const;

  // Re-express over another variable list. Every variable actually used must
  // appear (by name) in `variables`; unused ones may be dropped.
  Poly with_variables(std::vector<std::string> variables) const;

  // Exact evaluation. Throws InvalidArgument on arity mismatch.
  Rational eval(std::span<const Rational> point) const;
  // Floating evaluation, Horner-style in each variable.
  double eval(std::span<const double> point) const;

  // Graded-lex printing, e.g. "-1/2*x^2*Z + 1/6*Z^3 + 1/2*y^2"; "0" for zero.
  std::string str() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  void require_same_variables(const Poly& other, const char* op) const;
  void require_arity(std::size_t n) const;

  std::vector<std::string> variables_;
  TermMap terms_;
};

// Parses the polynomial grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*      ('/' only by a nonzero constant)
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | variable | '(' expr ')'
// Rationals are written a/b. Implicit multiplication is rejected.
Poly parse_poly(std::string_view text, const std::vector<std::string>& variables);

}  // namespace lagsg

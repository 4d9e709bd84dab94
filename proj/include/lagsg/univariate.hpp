#pragma once

#include <vector>

#include "lagsg/rational.hpp"

namespace lagsg {

class Poly;

// Dense univariate polynomial with exact coefficients, lowest degree first.
// Used for real-root isolation; not a general-purpose type.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  // From a Poly in which every variable except `var` has degree 0.
  static UPoly from_poly(const Poly& p, std::size_t var);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  int sign_at(const Rational& x) const { return eval(x).sign(); }

  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator-(const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder of exact division; throws DomainError if b is zero.
void divmod(const UPoly& a, const UPoly& b, UPoly& quotient, UPoly& remainder);
UPoly gcd(UPoly a, UPoly b);

// Sturm chain p, p', -rem(p, p'), ... (each normalized by a positive scale).
std::vector<UPoly> sturm_chain(const UPoly& p);
// Number of distinct real roots of p in (lo, hi].
int count_distinct_roots(const std::vector<UPoly>& chain, const Rational& lo, const Rational& hi);

struct RealRoot {
  double value = 0.0;
  unsigned multiplicity = 1;
  Rational lo, hi;  // isolating interval (lo, hi]
};

// All real roots of a nonzero polynomial, ascending, each reported once with
// its multiplicity. Isolation is exact (Sturm); the value is refined until the
// isolating interval is narrower than `abs_tol` and then polished by Newton steps.
std::vector<RealRoot> real_roots(const UPoly& p, double abs_tol = 1e-13);

}  // namespace lagsg

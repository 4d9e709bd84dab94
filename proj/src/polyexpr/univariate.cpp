#include "lagsg/univariate.hpp"

#include <algorithm>
#include <cmath>

#include "lagsg/error.hpp"
#include "lagsg/poly.hpp"

namespace lagsg {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::from_poly(const Poly& p, std::size_t var) {
  std::vector<Rational> c(p.degree_in(var) + 1);
  for (const auto& [e, coeff] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0)
        throw InvalidArgument("polynomial is not univariate in '" + p.variables()[var] + "'");
    c[e[var]] += coeff;
  }
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double UPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = c_;
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x = -x;
  return UPoly(std::move(c));
}

void divmod(const UPoly& a, const UPoly& b, UPoly& quotient, UPoly& remainder) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const auto& d = b.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(std::max(0, a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const Rational& rk = r[static_cast<std::size_t>(k)];
    if (rk.is_zero()) continue;
    const Rational f = rk / d.back();
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * d[static_cast<std::size_t>(j)];
  }
  quotient = UPoly(std::move(q));
  remainder = UPoly(std::move(r));
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  UPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  for (;;) {
    UPoly q, r;
    divmod(chain[chain.size() - 2], chain.back(), q, r);
    if (r.is_zero()) break;
    // Dividing by |leading| keeps the sign pattern and the coefficient size down.
    UPoly next = -r;
    const Rational scale = next.leading().abs();
    std::vector<Rational> c = next.coeffs();
    for (auto& x : c) x /= scale;
    chain.emplace_back(std::move(c));
  }
  return chain;
}

namespace {

int sign_variations(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Cauchy bound: every root satisfies |x| < 1 + max |a_k / a_n|.
Rational root_bound(const UPoly& p) {
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = (p.coeffs()[static_cast<std::size_t>(k)] / p.leading()).abs();
    if (r > m) m = r;
  }
  return m + Rational(1);
}

unsigned multiplicity_in(const UPoly& g, const Rational& lo, const Rational& hi) {
  if (g.degree() < 1) return 0;
  const auto chain = sturm_chain(g);
  if (count_distinct_roots(chain, lo, hi) == 0) return 0;
  return 1 + multiplicity_in(gcd(g, g.derivative()), lo, hi);
}

}  // namespace

int count_distinct_roots(const std::vector<UPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::vector<RealRoot> real_roots(const UPoly& p, double abs_tol) {
  if (p.is_zero()) throw DomainError("real_roots of the zero polynomial");
  std::vector<RealRoot> roots;
  if (p.degree() < 1) return roots;

  const UPoly g = gcd(p, p.derivative());
  UPoly squarefree, rem;
  divmod(p, g, squarefree, rem);
  const auto chain = sturm_chain(squarefree);

  const Rational bound = root_bound(squarefree);
  std::vector<std::pair<Rational, Rational>> pending{{-bound, bound}};
  std::vector<std::pair<Rational, Rational>> isolated;
  while (!pending.empty()) {
    auto [lo, hi] = pending.back();
    pending.pop_back();
    const int n = count_distinct_roots(chain, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    const Rational mid = (lo + hi) / Rational(2);
    pending.emplace_back(lo, mid);
    pending.emplace_back(mid, hi);
  }
  std::sort(isolated.begin(), isolated.end());

  const Rational tol = Rational::from_double(abs_tol);
  const UPoly dsq = squarefree.derivative();
  for (auto [lo, hi] : isolated) {
    // Root lies in (lo, hi]; the squarefree part changes sign across it.
    double value = 0.0;
    if (squarefree.sign_at(hi) == 0) {
      value = hi.to_double();
    } else {
      const int s_hi = squarefree.sign_at(hi);
      bool exact = false;
      while (hi - lo > tol) {
        const Rational mid = (lo + hi) / Rational(2);
        const int s = squarefree.sign_at(mid);
        if (s == 0) {
          lo = hi = mid;
          exact = true;
          break;
        }
        if (s == s_hi) hi = mid; else lo = mid;
      }
      value = ((lo + hi) / Rational(2)).to_double();
      if (!exact) {
        const double a = lo.to_double(), b = hi.to_double();
        for (int it = 0; it < 4; ++it) {
          const double f = squarefree.eval(value), df = dsq.eval(value);
          if (df == 0.0 || !std::isfinite(f / df)) break;
          const double next = value - f / df;
          if (!(next >= a && next <= b)) break;
          value = next;
        }
      }
    }
    RealRoot r;
    r.value = value;
    r.lo = lo;
    r.hi = hi;
    if (lo == hi) {
      r.lo = lo - tol;  // keep a proper interval for the multiplicity count
    }
    r.multiplicity = 1 + multiplicity_in(g, r.lo, r.hi);
    roots.push_back(std::move(r));
  }
  return roots;
}

}  // namespace lagsg

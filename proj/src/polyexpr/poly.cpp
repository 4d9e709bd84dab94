#include "lagsg/poly.hpp"

#include <algorithm>
#include <numeric>

#include "lagsg/error.hpp"
#include "lagsg/horner.hpp"

namespace lagsg {

bool GradedLexOrder::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly::Poly(std::vector<std::string> variables) : variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    for (std::size_t j = i + 1; j < variables_.size(); ++j)
      if (variables_[i] == variables_[j]) throw InvalidArgument("duplicate variable '" + variables_[i] + "'");
}

Poly Poly::constant(std::vector<std::string> variables, const Rational& value) {
  Poly p(std::move(variables));
  p.add_term(Exponents(p.arity(), 0), value);
  return p;
}

Poly Poly::variable(std::vector<std::string> variables, std::string_view name) {
  Poly p(std::move(variables));
  Exponents e(p.arity(), 0);
  e[p.index_of(name)] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Poly Poly::monomial(std::vector<std::string> variables, Exponents exponents, const Rational& coeff) {
  Poly p(std::move(variables));
  if (exponents.size() != p.arity()) throw InvalidArgument("exponent vector length does not match variable count");
  p.add_term(exponents, coeff);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](std::uint32_t k) { return k == 0; }));
}

Rational Poly::constant_term() const { return coefficient(Exponents(arity(), 0)); }

Rational Poly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::size_t> Poly::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

std::size_t Poly::index_of(std::string_view name) const {
  if (auto i = find_variable(name)) return *i;
  throw InvalidArgument("unknown variable '" + std::string(name) + "'");
}

unsigned Poly::degree_in(std::size_t var) const {
  if (var >= arity()) throw InvalidArgument("variable index out of range");
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<unsigned>(e[var]));
  return d;
}

unsigned Poly::total_degree() const {
  // Graded order: the first stored term has the largest total degree.
  if (terms_.empty()) return 0;
  const auto& e = terms_.begin()->first;
  return static_cast<unsigned>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::require_same_variables(const Poly& other, const char* op) const {
  if (variables_ != other.variables_)
    throw InvalidArgument(std::string("variable lists differ in polynomial ") + op);
}

void Poly::require_arity(std::size_t n) const {
  if (n != arity())
    throw InvalidArgument("arity mismatch: expected " + std::to_string(arity()) + " values, got " +
                          std::to_string(n));
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_variables(other, "addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_variables(other, "subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_variables(b, "multiplication");
  Poly out(a.variables_);
  Exponents e(a.arity());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& [e, c] : a.terms_) c = -c;
  return a;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(variables_, Rational(1));
  Poly base = *this;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent != 0) base *= base;
  }
  return result;
}

Poly Poly::diff(std::size_t var) const {
  if (var >= arity()) throw InvalidArgument("variable index out of range");
  Poly out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * Rational(static_cast<long>(e[var])));
  }
  return out;
}

Poly Poly::antiderivative(std::size_t var) const {
  if (var >= arity()) throw InvalidArgument("variable index out of range");
  Poly out(variables_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    ++d[var];
    out.add_term(d, c / Rational(static_cast<long>(d[var])));
  }
  return out;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  if (var >= arity()) throw InvalidArgument("variable index out of range");
  require_same_variables(value, "substitution");
  // Group by the exponent of `var`, then Horner in `value`.
  const unsigned top = degree_in(var);
  std::vector<Poly> by_power(top + 1, Poly(variables_));
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    by_power[e[var]].add_term(rest, c);
  }
  Poly out = by_power[top];
  for (unsigned k = top; k-- > 0;) {
    out *= value;
    out += by_power[k];
  }
  return out;
}

Poly Poly::substitute(std::size_t var, const Rational& value) const {
  if (var >= arity()) throw InvalidArgument("variable index out of range");
  Poly out(variables_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    out.add_term(rest, c * lagsg::pow(value, e[var]));
  }
  return out;
}

Poly Poly::with_variables(std::vector<std::string> variables) const {
  Poly out(std::move(variables));
  std::vector<std::size_t> target(arity());
  for (std::size_t i = 0; i < arity(); ++i) {
    auto j = out.find_variable(variables_[i]);
    if (j) {
      target[i] = *j;
    } else if (degree_in(i) != 0) {
      throw InvalidArgument("variable '" + variables_[i] + "' is used but absent from the target variable list");
    } else {
      target[i] = out.arity();  // unused, dropped
    }
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(out.arity(), 0);
    for (std::size_t i = 0; i < arity(); ++i)
      if (e[i] != 0) ne[target[i]] = e[i];
    out.add_term(ne, c);
  }
  return out;
}

Rational Poly::eval(std::span<const Rational> point) const {
  require_arity(point.size());
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= lagsg::pow(point[i], e[i]);
    sum += t;
  }
  return sum;
}

double Poly::eval(std::span<const double> point) const {
  require_arity(point.size());
  return HornerPoly(*this)(point);
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c.sign() < 0;
    const Rational mag = c.abs();
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += variables_[i];
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += factors;
    } else {
      out += mag.str() + "*" + factors;
    }
  }
  return out;
}

}  // namespace lagsg

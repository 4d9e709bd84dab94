#include "lagsg/rational.hpp"

#include <cctype>
#include <cmath>

#include "lagsg/error.hpp"

namespace lagsg {

Rational::Rational(long num, long den) : q_(mpz_class(num), mpz_class(den)) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot convert non-finite value to a rational");
  mpq_class q;
  q = value;  // mpq_set_d is exact
  return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  auto is_integer_literal = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");

  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw InvalidArgument("rational with zero denominator '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent != 0) b *= b;
  }
  return result;
}

}  // namespace lagsg

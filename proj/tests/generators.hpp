#pragma once

// Small random generators for property tests. Seeds are fixed per test so
// failures reproduce.

#include <random>
#include <string>
#include <vector>

#include "lagsg/poly.hpp"
#include "lagsg/rational.hpp"

namespace lagsg::testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long max_num = 9, long max_den = 6) {
    return Rational(integer(-max_num, max_num), integer(1, max_den));
  }
  Rational nonzero_rational(long max_num = 9, long max_den = 6) {
    long n = 0;
    while (n == 0) n = integer(-max_num, max_num);
    return Rational(n, integer(1, max_den));
  }

  Poly poly(const std::vector<std::string>& vars, unsigned max_degree, int max_terms) {
    Poly p(vars);
    const int terms = static_cast<int>(integer(0, max_terms));
    for (int t = 0; t < terms; ++t) {
      Exponents e(vars.size(), 0);
      unsigned budget = static_cast<unsigned>(integer(0, max_degree));
      for (std::size_t k = 0; k < vars.size() && budget > 0; ++k) {
        const auto d = static_cast<unsigned>(integer(0, budget));
        e[k] = d;
        budget -= d;
      }
      p += Poly::monomial(vars, e, rational());
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace lagsg::testgen

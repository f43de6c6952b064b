#pragma once

#include <string>

#include <gmpxx.h>

namespace gwprod {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_fraction(const std::string& s) {
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

Integer binomial(long n, long k);
Integer factorial(long n);

}  // namespace gwprod

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace fnoise {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// N (N-1) ... (N-p+1); (N)_0 = 1.
inline Integer falling_factorial(std::uint64_t n, unsigned p) {
  Integer out = 1;
  for (unsigned i = 0; i < p; ++i) {
    if (n < i) return 0;
    out *= Integer(static_cast<unsigned long>(n - i));
  }
  return out;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

/// Parses "p", "p/q", or a terminating decimal such as "0.5".
Rational parse_rational(const std::string& text);

}  // namespace fnoise

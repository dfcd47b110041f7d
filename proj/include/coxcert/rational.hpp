#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "coxcert/errors.hpp"

namespace coxcert {

// Exact scalars. Int is an arbitrary-precision integer, Rational a quotient
// kept in canonical reduced form: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
// GMP maintains exactly this normal form, so the invariant holds for every
// value produced by arithmetic; from_string canonicalizes explicitly.
using Int = mpz_class;
using Rational = mpq_class;

inline const Int& numerator(const Rational& q) { return q.get_num(); }
inline const Int& denominator(const Rational& q) { return q.get_den(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_even(const Int& z) { return mpz_even_p(z.get_mpz_t()) != 0; }

inline Rational rational_of(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string int_to_string(const Int& z) { return z.get_str(10); }

inline Int int_from_string(std::string_view s) {
  Int z;
  if (s.empty() || mpz_set_str(z.get_mpz_t(), std::string(s).c_str(), 10) != 0)
    throw ContractViolation("not a decimal integer: '" + std::string(s) + "'");
  return z;
}

// "a" for integers, "a/b" otherwise.
inline std::string rational_to_string(const Rational& q) {
  if (is_integer(q)) return int_to_string(numerator(q));
  return int_to_string(numerator(q)) + "/" + int_to_string(denominator(q));
}

inline Rational rational_from_string(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (sgn(den) <= 0) throw ContractViolation("denominator must be positive: '" + std::string(s) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace coxcert

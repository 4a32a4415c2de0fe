#pragma once

#include <gmpxx.h>

#include <string>

#include "rdisc/errors.hpp"

namespace rdisc {

/// Arbitrary-precision integer, the coefficient domain of every polynomial.
using Int = mpz_class;

/// Reduced fraction with positive denominator (constants recovered by the
/// factorization pipeline live here, never inside a Polynomial).
using Rational = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool int_divides(const Int& d, const Int& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Quotient a/d assuming exact divisibility.
inline Int int_div_exact(const Int& a, const Int& d) {
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& v) {
  return sgn(v) >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

/// Floor square root; exact when is_perfect_square(v).
inline Int int_sqrt(const Int& v) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

inline Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace rdisc

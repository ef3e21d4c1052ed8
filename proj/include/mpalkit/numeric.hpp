#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

#include "mpalkit/errors.hpp"

namespace mpalkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical fraction num/den (lowest terms, positive denominator).
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ZeroDenominator();
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline Integer pow_integer(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Rational pow_rational(const Rational& base, unsigned long exp) {
  return Rational(pow_integer(base.get_num(), exp), pow_integer(base.get_den(), exp));
}

inline Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

inline bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer floor_div(const Integer& num, const Integer& den) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

inline Integer ceil_div(const Integer& num, const Integer& den) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

/// "a/b" or "a" -> exact rational; throws ParseError on malformed input.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return make_rational(Integer(text), Integer(1));
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw ParseError("bad rational: " + text);
    return make_rational(Integer(num), Integer(den));
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational: " + text);
  }
}

/// Decimal rendering with `digits` places after the point, rounded to
/// nearest (ties away from zero). Deterministic, locale independent.
inline std::string decimal_string(const Rational& value, std::size_t digits) {
  const bool negative = value < 0;
  Integer num = abs(value.get_num());
  const Integer den = value.get_den();
  Integer scaled = num * pow_integer(Integer(10), digits);
  Integer rounded = floor_div(2 * scaled + den, 2 * den);
  const Integer shift = pow_integer(Integer(10), digits);
  Integer whole = rounded / shift;
  Integer frac = rounded % shift;
  std::string out;
  if (negative && rounded != 0) out += '-';
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += '.';
    out += std::string(digits - f.size(), '0');
    out += f;
  }
  return out;
}

}  // namespace mpalkit

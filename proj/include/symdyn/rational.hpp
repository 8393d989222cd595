#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sdyn {

/// Exact rational number. Every distance and frequency in the library is
/// returned in this type; doubles appear only when rendering reports.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

/// Largest integer not exceeding r.
BigInt floor(const Rational& r);
/// Smallest integer not below r.
BigInt ceil(const Rational& r);

/// 2^{-k} for k >= 0.
Rational pow2_inverse(unsigned k);

/// Returns true and writes the value when z fits in int64.
bool fits_int64(const BigInt& z, std::int64_t& out);

}  // namespace sdyn

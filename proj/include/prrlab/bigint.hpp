#pragma once

// Arbitrary-precision integers and rationals (GMP), plus the few conversions the
// rest of the library needs.

#include <gmpxx.h>

#include <string>

#include "prrlab/error.hpp"
#include "prrlab/modular.hpp"

namespace prrlab {

using BigInt = mpz_class;

/// Reduced fraction with positive denominator; mpq_class keeps it canonical.
using BigRational = mpq_class;

inline BigInt big(u64 v) {
  static_assert(sizeof(unsigned long) == sizeof(u64));
  return BigInt(static_cast<unsigned long>(v));
}

inline BigInt big_signed(i64 v) {
  static_assert(sizeof(long) == sizeof(i64));
  return BigInt(static_cast<long>(v));
}

inline bool fits_u64(const BigInt& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline u64 to_u64(const BigInt& v) {
  if (!fits_u64(v)) throw error(errc::index_out_of_range, v.get_str() + " does not fit in 64 bits");
  return static_cast<u64>(mpz_get_ui(v.get_mpz_t()));
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// "numerator/denominator", or just the numerator for integers.
inline std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// v mod m in [0, m) for any sign of v.
inline u64 reduce(const BigInt& v, u64 m) {
  return static_cast<u64>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m)));
}

/// Numerator times the inverse of the denominator; NotInvertible when m divides the denominator.
inline u64 reduce(const BigRational& q, u64 m) {
  u64 num = reduce(q.get_num(), m);
  u64 den = reduce(q.get_den(), m);
  return mul_mod(num, inv_mod(den, m), m);
}

inline BigInt binomial(u64 n, u64 k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline BigInt pow2(u64 e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

}  // namespace prrlab

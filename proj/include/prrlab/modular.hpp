#pragma once

// Modular arithmetic on machine-word moduli (m < 2^63).

#include <bit>
#include <cstdint>
#include <string>

#include "prrlab/error.hpp"

namespace prrlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;

/// Moduli at or above this bound belong to the big-integer layer.
inline constexpr u64 word_modulus_limit = u64{1} << 63;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // no wrap: a, b < 2^63
  return s >= m ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

/// Reduces a signed integer into [0, m).
constexpr u64 reduce(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  // -(a+1) avoids overflow on INT64_MIN
  u64 r = static_cast<u64>(-(a + 1)) % m;
  return m - 1 - r;
}

/// a^e mod m by square-and-multiply. pow_mod(0, 0, m) is 1 (empty product).
constexpr u64 pow_mod(u64 a, u64 e, u64 m) {
  u64 result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return result;
}

/// Inverse of a modulo m via extended Euclid; throws NotInvertible when gcd(a, m) > 1.
inline u64 inv_mod(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw error(errc::not_invertible,
                std::to_string(a) + " has no inverse modulo " + std::to_string(m));
  }
  return reduce(old_s, m);
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre(i64 a, u64 p) {
  u64 r = pow_mod(reduce(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

/// Jacobi symbol (a/n) for odd n by reciprocity. Agrees with legendre() when n is prime.
inline int jacobi(i64 a_signed, u64 n) {
  u64 a = reduce(a_signed, n);
  int sign = 1;
  while (a != 0) {
    int twos = std::countr_zero(a);
    a >>= twos;
    if ((twos & 1) && (n % 8 == 3 || n % 8 == 5)) sign = -sign;
    if (a % 4 == 3 && n % 4 == 3) sign = -sign;
    u64 t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? sign : 0;
}

/// True iff a is a cube in F_p^*; requires p ≡ 1 (mod 3) and p ∤ a.
inline bool is_cubic_residue(i64 a, u64 p) {
  if (p % 3 != 1) {
    throw error(errc::bad_modulus, std::to_string(p) + " is not 1 mod 3");
  }
  u64 r = reduce(a, p);
  if (r == 0) throw error(errc::zero_input, "p divides a");
  return pow_mod(r, (p - 1) / 3, p) == 1;
}

/// floor(sqrt(n)), exact.
constexpr u64 isqrt(u64 n) {
  if (n < 2) return n;
  u64 x = u64{1} << ((std::bit_width(n) + 1) / 2);
  while (true) {
    u64 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

/// An element ā of Z/mZ.
class ResidueClass {
 public:
  ResidueClass(i64 a, u64 modulus) : modulus_(checked(modulus)), value_(reduce(a, modulus)) {}

  static ResidueClass from_unsigned(u64 a, u64 modulus) {
    ResidueClass r(0, modulus);
    r.value_ = a % modulus;
    return r;
  }

  [[nodiscard]] u64 value() const noexcept { return value_; }
  [[nodiscard]] u64 modulus() const noexcept { return modulus_; }

  [[nodiscard]] ResidueClass pow(u64 e) const { return with(pow_mod(value_, e, modulus_)); }
  [[nodiscard]] ResidueClass inverse() const { return with(inv_mod(value_, modulus_)); }

  friend ResidueClass operator+(ResidueClass x, const ResidueClass& y) {
    x.value_ = add_mod(x.value_, y.value_, x.modulus_);
    return x;
  }
  friend ResidueClass operator-(ResidueClass x, const ResidueClass& y) {
    x.value_ = sub_mod(x.value_, y.value_, x.modulus_);
    return x;
  }
  friend ResidueClass operator*(ResidueClass x, const ResidueClass& y) {
    x.value_ = mul_mod(x.value_, y.value_, x.modulus_);
    return x;
  }
  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

 private:
  static u64 checked(u64 m) {
    if (m < 2 || m >= word_modulus_limit) {
      throw error(errc::bad_modulus, "modulus must lie in [2, 2^63): " + std::to_string(m));
    }
    return m;
  }
  [[nodiscard]] ResidueClass with(u64 v) const {
    ResidueClass r = *this;
    r.value_ = v;
    return r;
  }

  u64 modulus_;
  u64 value_;
};

}  // namespace prrlab

#pragma once

// Square roots modulo odd primes and searches for quadratic / cubic nonresidues
// among Fibonacci, Lucas, Mersenne-type and 2^q + 1 values.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>

#include "prrlab/error.hpp"
#include "prrlab/modular.hpp"
#include "prrlab/primes.hpp"

namespace prrlab {

/// p - 1 = 2^s * t with t odd.
struct SqrtDecomposition {
  u64 p = 0;
  unsigned s = 0;
  u64 t = 0;

  static SqrtDecomposition of(u64 p) {
    if (p < 3 || p % 2 == 0) throw error(errc::bad_modulus, "need an odd prime");
    SqrtDecomposition d{p, 0, p - 1};
    while (d.t % 2 == 0) {
      d.t /= 2;
      ++d.s;
    }
    return d;
  }
};

/// Square root of the quadratic residue a modulo p, given a nonresidue d.
/// Builds even exponents m_1 = 0, m_{i+1} ∈ {m_i, m_i + 2^i} keeping
/// (a d^{m_i})^{2^{s-i} t} ≡ 1, then x = a^{(t+1)/2} (d^t)^{m_s/2}.
/// Returns the smaller of the two roots.
inline u64 tonelli_shanks(u64 a, u64 p, u64 d) {
  if (legendre(static_cast<i64>(a % p), p) != 1) {
    throw error(errc::not_a_residue, std::to_string(a) + " is not a quadratic residue mod " + std::to_string(p));
  }
  if (legendre(static_cast<i64>(d % p), p) != -1) {
    throw error(errc::bad_nonresidue, std::to_string(d) + " is not a nonresidue mod " + std::to_string(p));
  }
  a %= p;
  const SqrtDecomposition dec = SqrtDecomposition::of(p);
  const unsigned s = dec.s;
  const u64 t = dec.t;
  u64 m = 0;
  for (unsigned i = 1; i < s; ++i) {
    u64 base = mul_mod(a, pow_mod(d, m, p), p);
    assert(pow_mod(base, t << (s - i), p) == 1);
    if (pow_mod(base, t << (s - i - 1), p) != 1) m += u64{1} << i;
  }
  assert(m % 2 == 0);
  assert(pow_mod(mul_mod(a, pow_mod(d, m, p), p), t, p) == 1);
  u64 x = mul_mod(pow_mod(a, (t + 1) / 2, p), pow_mod(pow_mod(d, t, p), m / 2, p), p);
  return std::min(x, p - x);
}

/// Strict upper bound value < num/den, compared exactly.
struct ValueCap {
  u64 num = ~u64{0};
  u64 den = 1;

  static ValueCap unbounded() { return {}; }
  static ValueCap below(u64 n) { return {n, 1}; }
  static ValueCap below_half(u64 n) { return {n, 2}; }

  [[nodiscard]] bool admits(u64 v) const {
    if (num == ~u64{0} && den == 1) return true;
    return static_cast<u128>(v) * den < num;
  }
};

struct NonresidueWitness {
  enum class Kind { fibonacci_qnr, lucas_qnr, mersenne_cubic_nr, two_pow_plus_one_qnr };

  Kind kind;
  u64 index = 0;  // k for F_k, L_k, 2^k - 1; the prime q for 2^q + 1
  u64 value = 0;  // the witness integer (for 2^q + 1: its residue mod p)

  friend bool operator==(const NonresidueWitness&, const NonresidueWitness&) = default;
};

/// Largest k with F_k < 2^63.
inline constexpr u64 max_word_fibonacci_index = 92;

/// Least Fibonacci number F_k (k >= 2, so values 1, 2, 3, 5, ...) that is a
/// quadratic nonresidue mod p and passes the cap. nullopt means none below the cap.
inline std::optional<NonresidueWitness> least_fib_qnr(u64 p, ValueCap cap) {
  u64 prev = 1, cur = 1;  // F_1, F_2
  for (u64 k = 2; k <= max_word_fibonacci_index; ++k) {
    if (!cap.admits(cur)) return std::nullopt;
    if (legendre(static_cast<i64>(cur), p) == -1) {
      return NonresidueWitness{NonresidueWitness::Kind::fibonacci_qnr, k, cur};
    }
    u64 next = prev + cur;
    prev = cur;
    cur = next;
  }
  return std::nullopt;
}

inline std::optional<NonresidueWitness> least_fib_qnr(u64 p) { return least_fib_qnr(p, ValueCap::below_half(p)); }

/// Least Lucas number (scanned L_0 = 2, L_1 = 1, L_2 = 3, ...) that is a
/// nonresidue mod p below the cap.
inline std::optional<NonresidueWitness> least_lucas_qnr(u64 p, ValueCap cap) {
  u64 prev = 2, cur = 1;  // L_0, L_1
  if (cap.admits(2) && legendre(2, p) == -1) {
    return NonresidueWitness{NonresidueWitness::Kind::lucas_qnr, 0, 2};
  }
  for (u64 k = 1; k <= max_word_fibonacci_index - 1; ++k) {
    if (!cap.admits(cur)) {
      if (k >= 2) return std::nullopt;
    } else if (legendre(static_cast<i64>(cur), p) == -1) {
      return NonresidueWitness{NonresidueWitness::Kind::lucas_qnr, k, cur};
    }
    u64 next = prev + cur;
    prev = cur;
    cur = next;
  }
  return std::nullopt;
}

inline std::optional<NonresidueWitness> least_lucas_qnr(u64 p) { return least_lucas_qnr(p, ValueCap::below(p)); }

/// Least k >= 1 with 2^k - 1 a cubic nonresidue mod p (p ≡ 1 mod 3) below the cap.
inline std::optional<NonresidueWitness> least_mersenne_cubic_nr(u64 p, ValueCap cap) {
  if (p % 3 != 1) throw error(errc::bad_modulus, std::to_string(p) + " is not 1 mod 3");
  for (u64 k = 1; k < 63; ++k) {
    u64 v = (u64{1} << k) - 1;
    if (!cap.admits(v)) return std::nullopt;
    if (v % p != 0 && !is_cubic_residue(static_cast<i64>(v), p)) {
      return NonresidueWitness{NonresidueWitness::Kind::mersenne_cubic_nr, k, v};
    }
  }
  return std::nullopt;
}

inline std::optional<NonresidueWitness> least_mersenne_cubic_nr(u64 p) {
  return least_mersenne_cubic_nr(p, ValueCap::below_half(p));
}

/// Least prime q < p with 2^q + 1 a quadratic nonresidue mod p.
inline std::optional<NonresidueWitness> exists_two_pow_plus_one_qnr(u64 p) {
  for (u64 q = 2; q < p; ++q) {
    if (!is_prime(q)) continue;
    u64 v = add_mod(pow_mod(2, q, p), 1, p);
    if (legendre(static_cast<i64>(v), p) == -1) {
      return NonresidueWitness{NonresidueWitness::Kind::two_pow_plus_one_qnr, q, v};
    }
  }
  return std::nullopt;
}

struct SqrtResult {
  u64 root = 0;
  u64 nonresidue = 0;
  bool fibonacci_path = true;  // false when the sequential fallback supplied d
  u64 fibonacci_index = 0;     // k with F_k = nonresidue on the Fibonacci path
};

/// Square root of a quadratic residue using a Fibonacci nonresidue below p/2
/// when one exists, else the least integer nonresidue 2, 3, ...
inline SqrtResult deterministic_sqrt(i64 a, u64 p) {
  u64 ar = reduce(a, p);
  if (legendre(static_cast<i64>(ar), p) != 1) {
    throw error(errc::not_a_residue, std::to_string(a) + " is not a quadratic residue mod " + std::to_string(p));
  }
  SqrtResult result;
  if (auto w = least_fib_qnr(p)) {
    result.nonresidue = w->value;
    result.fibonacci_index = w->index;
  } else {
    result.fibonacci_path = false;
    u64 d = 2;
    while (legendre(static_cast<i64>(d), p) != -1) ++d;
    result.nonresidue = d;
  }
  result.root = tonelli_shanks(ar, p, result.nonresidue);
  return result;
}

/// Least k >= 1 with F_k ≡ -1 (mod n). Scans at most n^2 steps; such a k always
/// exists because (F_j, F_{j+1}) mod n returns to (0, 1) within n^2 steps.
inline u64 least_fib_neg_one(u64 n) {
  if (n < 2) throw error(errc::bad_parameters, "n must exceed 1");
  if (n > (u64{1} << 31)) throw error(errc::bad_parameters, "n too large");
  const u64 target = n - 1;
  u64 f = 1 % n, g = 1 % n;  // F_1, F_2
  for (u64 k = 1; k <= n * n; ++k) {
    if (f == target) return k;
    u64 h = add_mod(f, g, n);
    f = g;
    g = h;
  }
  throw error(errc::bad_parameters, "no k found within n^2 steps");  // unreachable
}

}  // namespace prrlab

#pragma once

// Prime sieve and primality testing for machine words and big integers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/modular.hpp"

namespace prrlab {

/// Sieve of Eratosthenes over [0, limit], with the primes also kept as a list.
class PrimeSieve {
 public:
  /// Memory bound: a bit per integer plus four bytes per prime.
  static constexpr u64 max_limit = 4'000'000'000ULL;

  explicit PrimeSieve(u64 limit) : limit_(limit) {
    if (limit < 2) throw error(errc::bad_parameters, "sieve limit must be at least 2");
    if (limit > max_limit) {
      throw error(errc::limit_too_large, "sieve limit " + std::to_string(limit) + " exceeds " +
                                             std::to_string(max_limit));
    }
    flags_.assign(limit + 1, true);
    flags_[0] = flags_[1] = false;
    for (u64 i = 2; i * i <= limit; ++i) {
      if (!flags_[i]) continue;
      for (u64 j = i * i; j <= limit; j += i) flags_[j] = false;
    }
    for (u64 i = 2; i <= limit; ++i) {
      if (flags_[i]) primes_.push_back(static_cast<std::uint32_t>(i));
    }
  }

  [[nodiscard]] u64 limit() const noexcept { return limit_; }

  [[nodiscard]] bool is_prime(u64 n) const {
    if (n > limit_) {
      throw error(errc::sieve_too_small,
                  std::to_string(n) + " is beyond sieve limit " + std::to_string(limit_));
    }
    return flags_[n];
  }

  [[nodiscard]] std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  [[nodiscard]] std::size_t prime_count() const noexcept { return primes_.size(); }

  /// p_n with p_1 = 2.
  [[nodiscard]] u64 nth_prime(std::size_t n) const {
    if (n == 0 || n > primes_.size()) {
      throw error(errc::sieve_too_small, "sieve holds " + std::to_string(primes_.size()) +
                                             " primes, asked for p_" + std::to_string(n));
    }
    return primes_[n - 1];
  }

  /// Number of primes <= x.
  [[nodiscard]] std::size_t pi(u64 x) const {
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  /// Primes in [lo, hi], clipped to the sieve.
  [[nodiscard]] std::span<const std::uint32_t> primes_in(u64 lo, u64 hi) const {
    auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(first, primes_.end(), hi);
    return {first, last};
  }

 private:
  u64 limit_;
  std::vector<bool> flags_;
  std::vector<std::uint32_t> primes_;
};

inline PrimeSieve sieve_primes(u64 limit) { return PrimeSieve(limit); }

namespace detail {

inline constexpr std::array<u64, 12> small_primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline bool strong_probable_prime(u64 n, u64 base) {
  base %= n;
  if (base == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = pow_mod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool strong_probable_prime(const BigInt& n, const BigInt& base) {
  BigInt d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

inline void halve_mod(BigInt& x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

/// Strong Lucas probable-prime test with Selfridge's parameters (P = 1).
inline bool strong_lucas_probable_prime(const BigInt& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d_param = 5;
  while (true) {
    BigInt dd(d_param);
    int j = mpz_jacobi(dd.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(dd) != n) return false;
    d_param = d_param > 0 ? -(d_param + 2) : -d_param + 2;
  }
  const BigInt disc(d_param);
  const BigInt q_param((1 - d_param) / 4);

  BigInt delta = n + 1;
  mp_bitcnt_t s = mpz_scan1(delta.get_mpz_t(), 0);
  BigInt d;
  mpz_fdiv_q_2exp(d.get_mpz_t(), delta.get_mpz_t(), s);

  BigInt u = 1, v = 1, qk = q_param;
  auto mod = [&n](BigInt& x) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); };
  mod(qk);
  for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    u = u * v;
    mod(u);
    v = v * v - 2 * qk;
    mod(v);
    qk = qk * qk;
    mod(qk);
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      BigInt nu = u + v;
      BigInt nv = disc * u + v;
      mod(nu);
      mod(nv);
      halve_mod(nu, n);
      halve_mod(nv, n);
      u = nu;
      v = nv;
      qk = qk * q_param;
      mod(qk);
    }
  }
  if (u == 0 || v == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    v = v * v - 2 * qk;
    mod(v);
    if (v == 0) return true;
    qk = qk * qk;
    mod(qk);
  }
  return false;
}

}  // namespace detail

/// Deterministic for every 64-bit n: strong pseudoprime tests to the fixed bases
/// {2, 325, 9375, 28178, 450775, 9780504, 1795265022}, which admit no 64-bit liars.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : detail::small_primes) {
    if (n % p == 0) return n == p;
  }
  if (n < 37 * 37) return true;
  for (u64 base : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!detail::strong_probable_prime(n, base)) return false;
  }
  return true;
}

/// Number of random-base Miller-Rabin rounds applied above 2^64, on top of BPSW.
inline constexpr int big_prime_extra_rounds = 64;

/// Exact below 2^64. Above, a Baillie-PSW test (strong base-2 plus strong Lucas)
/// followed by 64 Miller-Rabin rounds with bases from a fixed-seed generator, so a
/// composite survives with probability below 4^-64 = 2^-128 even ignoring BPSW.
inline bool is_prime(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  for (u64 p : detail::small_primes) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
  }
  if (!detail::strong_probable_prime(n, BigInt(2))) return false;
  if (!detail::strong_lucas_probable_prime(n)) return false;
  std::mt19937_64 rng(0x5eed5eedULL);
  BigInt span_size = n - 3;
  for (int round = 0; round < big_prime_extra_rounds; ++round) {
    BigInt base = 0;
    for (int limb = 0; limb < 4; ++limb) {
      base <<= 64;
      base += big(rng());
    }
    base = base % span_size + 2;
    if (!detail::strong_probable_prime(n, base)) return false;
  }
  return true;
}

}  // namespace prrlab

#pragma once

// Integer factorization: trial division to a fixed bound, then Pollard rho with
// Brent's cycle detection. Polynomial x^2 + c with c = 1, 2, 3, ... on retry, so
// every run is reproducible.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/modular.hpp"
#include "prrlab/primes.hpp"

namespace prrlab {

inline constexpr u64 trial_division_bound = 100'000;
inline constexpr u64 default_rho_budget = u64{1} << 26;

/// Rho iterations allowed per composite cofactor.
struct FactorBudget {
  u64 rho_iterations = default_rho_budget;
};

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n together with its prime powers, primes strictly increasing.
struct Factorization {
  BigInt n = 1;
  std::vector<PrimePower> factors;

  [[nodiscard]] BigInt product() const {
    BigInt r = 1;
    for (const auto& [p, e] : factors) {
      BigInt pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      r *= pe;
    }
    return r;
  }

  /// Number of distinct prime divisors.
  [[nodiscard]] std::size_t omega() const noexcept { return factors.size(); }
};

/// Result of a budgeted factorization. When incomplete, `unresolved` holds the
/// composite cofactors rho could not split; n = product(partial) * product(unresolved).
struct FactorOutcome {
  Factorization partial;
  std::vector<BigInt> unresolved;

  [[nodiscard]] bool complete() const noexcept { return unresolved.empty(); }
};

/// Word-size factorization as (prime, exponent) pairs, primes increasing.
using WordFactors = std::vector<std::pair<u64, unsigned>>;

namespace detail {

inline u64 rho_step(u64 x, u64 c, u64 n) { return add_mod(mul_mod(x, x, n), c, n); }

inline u64 abs_diff(u64 a, u64 b) { return a > b ? a - b : b - a; }

/// One Brent rho attempt; returns a proper divisor or 0.
inline u64 brent_rho(u64 n, u64 c, u64& iterations_left) {
  constexpr u64 batch = 128;
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
  for (u64 r = 1; g == 1; r *= 2) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = rho_step(y, c, n);
    for (u64 k = 0; k < r && g == 1; k += batch) {
      ys = y;
      u64 steps = std::min(batch, r - k);
      if (iterations_left < steps) return 0;
      iterations_left -= steps;
      for (u64 i = 0; i < steps; ++i) {
        y = rho_step(y, c, n);
        q = mul_mod(q, abs_diff(x, y), n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = rho_step(ys, c, n);
      g = std::gcd(abs_diff(x, ys), n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

inline BigInt brent_rho(const BigInt& n, unsigned long c, u64& iterations_left) {
  constexpr u64 batch = 128;
  BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, t;
  auto step = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  for (u64 r = 1; g == 1; r *= 2) {
    x = y;
    for (u64 i = 0; i < r; ++i) step(y);
    for (u64 k = 0; k < r && g == 1; k += batch) {
      ys = y;
      u64 steps = std::min(batch, r - k);
      if (iterations_left < steps) return 0;
      iterations_left -= steps;
      for (u64 i = 0; i < steps; ++i) {
        step(y);
        t = x - y;
        q = q * abs(t);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) {
    do {
      step(ys);
      t = x - ys;
      t = abs(t);
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

/// Splits a composite; returns 0 if the budget runs out first.
inline BigInt find_divisor(const BigInt& n, u64& iterations_left) {
  for (unsigned long c = 1; iterations_left > 0; ++c) {
    if (fits_u64(n)) {
      u64 d = brent_rho(to_u64(n), c, iterations_left);
      if (d != 0) return big(d);
    } else {
      BigInt d = brent_rho(n, c, iterations_left);
      if (d != 0) return d;
    }
  }
  return 0;
}

inline const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    PrimeSieve sieve(trial_division_bound);
    auto span = sieve.primes();
    return std::vector<std::uint32_t>(span.begin(), span.end());
  }();
  return primes;
}

}  // namespace detail

/// Factors n >= 1. Trial division by every prime below 10^5, then rho on each
/// remaining composite with `budget.rho_iterations` per cofactor.
inline FactorOutcome factorize(const BigInt& n, FactorBudget budget = {}) {
  if (sgn(n) <= 0) throw error(errc::bad_parameters, "factorize needs n >= 1");
  std::map<BigInt, unsigned> found;
  FactorOutcome out;
  out.partial.n = n;

  BigInt rest = n;
  for (std::uint32_t p : detail::trial_primes()) {
    if (rest == 1) break;
    if (BigInt(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++found[BigInt(p)];
    }
  }

  std::vector<BigInt> pending;
  if (rest != 1) pending.push_back(rest);
  while (!pending.empty()) {
    BigInt m = std::move(pending.back());
    pending.pop_back();
    if (is_prime(m)) {
      ++found[m];
      continue;
    }
    // a perfect power defeats rho's gcd step only rarely, but a square root is cheap to try
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      BigInt root;
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
      pending.push_back(root);
      pending.push_back(root);
      continue;
    }
    u64 iterations_left = budget.rho_iterations;
    BigInt d = detail::find_divisor(m, iterations_left);
    if (d == 0) {
      out.unresolved.push_back(m);
      continue;
    }
    pending.push_back(m / d);
    pending.push_back(d);
  }
  for (auto& [p, e] : found) out.partial.factors.push_back({p, e});
  std::sort(out.unresolved.begin(), out.unresolved.end());
  return out;
}

/// Smallest-prime-factor table for batch factoring of small integers (p - 1 in range scans).
class SmallestFactorTable {
 public:
  static constexpr u64 max_limit = u64{1} << 30;

  explicit SmallestFactorTable(u64 limit) : spf_(limit + 1, 0) {
    if (limit > max_limit) throw error(errc::limit_too_large, "factor table limit too large");
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      for (u64 j = i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }

  [[nodiscard]] u64 limit() const noexcept { return spf_.size() - 1; }

  [[nodiscard]] WordFactors factor(u64 n) const {
    WordFactors out;
    while (n > 1) {
      u64 p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> spf_;
};

/// Complete factorization of a machine word (rho always succeeds below 2^64).
inline WordFactors factor_word(u64 n) {
  WordFactors out;
  if (n < 2) return out;
  for (std::uint32_t p : detail::trial_primes()) {
    if (u64{p} * p > n) break;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) {
    FactorOutcome rest = factorize(big(n), FactorBudget{~u64{0}});
    for (const auto& [p, e] : rest.partial.factors) out.emplace_back(to_u64(p), e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 euler_phi(const WordFactors& factors) {
  u64 phi = 1;
  for (auto [p, e] : factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

}  // namespace prrlab

#pragma once

// Exact and mod-p evaluation of the integer and rational sequences used by the
// searches: Fibonacci/Lucas, prime sums, Bernoulli, Euler, harmonic, Catalan,
// Bell, Franel, central trinomial and the simple closed forms.

#include <array>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/modular.hpp"
#include "prrlab/primes.hpp"

namespace prrlab {

/// Identifies a sequence (and its parameters, for LucasU and Franel).
struct SequenceKind {
  enum class Tag {
    fibonacci,
    lucas,
    lucas_u,
    prime_sum,
    alt_prime_sum,
    mersenne,
    factorial,
    two_pow_minus_n,
    two_pow_plus_one,
    two_pow_minus_q,
    bernoulli,
    euler,
    harmonic,
    harmonic2,
    catalan,
    bell,
    franel,
    central_trinomial,
    square_plus_one,
    triangular,
    consecutive_product,
  };

  Tag tag = Tag::fibonacci;
  i64 a = 0;       // LucasU A
  i64 b = 0;       // LucasU B
  unsigned r = 0;  // Franel order

  static SequenceKind of(Tag t) {
    if (t == Tag::lucas_u || t == Tag::franel) {
      throw error(errc::bad_parameters, "LucasU and Franel need parameters");
    }
    return SequenceKind{t};
  }

  static SequenceKind lucas_u(i64 a, i64 b) {
    if (b == 0 || a * a == 4 * b) {
      throw error(errc::bad_parameters, "LucasU needs B != 0 and A^2 != 4B");
    }
    return SequenceKind{Tag::lucas_u, a, b, 0};
  }

  static SequenceKind franel(unsigned order) {
    if (order < 2) throw error(errc::bad_parameters, "Franel order must be >= 2");
    return SequenceKind{Tag::franel, 0, 0, order};
  }

  [[nodiscard]] bool is_rational() const noexcept {
    return tag == Tag::bernoulli || tag == Tag::harmonic || tag == Tag::harmonic2;
  }

  /// Stable identifier used on the command line and in reports.
  [[nodiscard]] std::string name() const {
    switch (tag) {
      case Tag::fibonacci: return "fibonacci";
      case Tag::lucas: return "lucas";
      case Tag::lucas_u: return "lucas_u(" + std::to_string(a) + "," + std::to_string(b) + ")";
      case Tag::prime_sum: return "prime_sum";
      case Tag::alt_prime_sum: return "alt_prime_sum";
      case Tag::mersenne: return "mersenne";
      case Tag::factorial: return "factorial";
      case Tag::two_pow_minus_n: return "two_pow_minus_n";
      case Tag::two_pow_plus_one: return "two_pow_plus_one";
      case Tag::two_pow_minus_q: return "two_pow_minus_q";
      case Tag::bernoulli: return "bernoulli";
      case Tag::euler: return "euler";
      case Tag::harmonic: return "harmonic";
      case Tag::harmonic2: return "harmonic2";
      case Tag::catalan: return "catalan";
      case Tag::bell: return "bell";
      case Tag::franel: return "franel" + std::to_string(r);
      case Tag::central_trinomial: return "trinomial";
      case Tag::square_plus_one: return "square_plus_one";
      case Tag::triangular: return "triangular";
      case Tag::consecutive_product: return "consecutive_product";
    }
    return "?";
  }

  friend bool operator==(const SequenceKind&, const SequenceKind&) = default;
};

// ---------------------------------------------------------------------------
// Fibonacci and Lucas

/// (F_k mod m, F_{k+1} mod m) by fast doubling.
inline std::pair<u64, u64> fib_pair_mod(u64 k, u64 m) {
  u64 f = 0, g = 1 % m;  // (F_j, F_{j+1}) for j = prefix of k's bits
  for (int bit = 63; bit >= 0; --bit) {
    // F_{2j} = F_j (2F_{j+1} - F_j), F_{2j+1} = F_j^2 + F_{j+1}^2
    u64 two_g_minus_f = sub_mod(add_mod(g, g, m), f, m);
    u64 f2 = mul_mod(f, two_g_minus_f, m);
    u64 g2 = add_mod(mul_mod(f, f, m), mul_mod(g, g, m), m);
    if ((k >> bit) & 1) {
      f = g2;
      g = add_mod(f2, g2, m);
    } else {
      f = f2;
      g = g2;
    }
  }
  return {f, g};
}

/// L_k = 2F_{k+1} - F_k (mod m).
inline u64 lucas_mod(u64 k, u64 m) {
  auto [f, g] = fib_pair_mod(k, m);
  return sub_mod(add_mod(g, g, m), f, m);
}

/// u_n(A, B) mod m via powers of [[A, -B], [1, 0]].
inline u64 lucas_u_mod(i64 a, i64 b, u64 n, u64 m) {
  if (b == 0 || a * a == 4 * b) throw error(errc::bad_parameters, "LucasU needs B != 0 and A^2 != 4B");
  using Mat = std::array<u64, 4>;
  auto mul = [m](const Mat& x, const Mat& y) {
    return Mat{add_mod(mul_mod(x[0], y[0], m), mul_mod(x[1], y[2], m), m),
               add_mod(mul_mod(x[0], y[1], m), mul_mod(x[1], y[3], m), m),
               add_mod(mul_mod(x[2], y[0], m), mul_mod(x[3], y[2], m), m),
               add_mod(mul_mod(x[2], y[1], m), mul_mod(x[3], y[3], m), m)};
  };
  Mat result{1 % m, 0, 0, 1 % m};
  Mat base{reduce(a, m), reduce(-b, m), 1 % m, 0};
  for (u64 e = n; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  // M^n = [[u_{n+1}, -B u_n], [u_n, -B u_{n-1}]]
  return result[2];
}

// ---------------------------------------------------------------------------
// Prime sums

/// S_n = p_1 + ... + p_n.
inline u64 prime_sum(std::size_t n, const PrimeSieve& sieve) {
  if (n == 0) throw error(errc::index_out_of_range, "S_n needs n >= 1");
  if (n > sieve.prime_count()) throw error(errc::sieve_too_small, "sieve does not reach p_n");
  u64 s = 0;
  for (std::size_t i = 0; i < n; ++i) s += sieve.primes()[i];
  return s;
}

/// s_n = p_n - p_{n-1} + ... ± p_1, i.e. s_n = p_n - s_{n-1}.
inline u64 alt_prime_sum(std::size_t n, const PrimeSieve& sieve) {
  if (n == 0) throw error(errc::index_out_of_range, "s_n needs n >= 1");
  if (n > sieve.prime_count()) throw error(errc::sieve_too_small, "sieve does not reach p_n");
  u64 s = 0;
  for (std::size_t i = 0; i < n; ++i) s = sieve.primes()[i] - s;
  return s;
}

// ---------------------------------------------------------------------------
// Factorials and binomials mod p

/// n! and 1/n! mod a prime p for 0 <= n < p; binomials of any size via Lucas' theorem.
class FactorialTable {
 public:
  explicit FactorialTable(u64 p) : p_(p), fact_(p), inv_fact_(p) {
    if (p < 2 || p >= word_modulus_limit) throw error(errc::bad_modulus, "bad prime");
    if (p > max_prime) throw error(errc::limit_too_large, "factorial table too large");
    fact_[0] = 1 % p;
    for (u64 i = 1; i < p; ++i) fact_[i] = mul_mod(fact_[i - 1], i, p);
    inv_fact_[p - 1] = inv_mod(fact_[p - 1], p);
    for (u64 i = p - 1; i > 0; --i) inv_fact_[i - 1] = mul_mod(inv_fact_[i], i, p);
  }

  static constexpr u64 max_prime = u64{1} << 28;

  [[nodiscard]] u64 prime() const noexcept { return p_; }
  [[nodiscard]] u64 factorial(u64 n) const { return n < p_ ? fact_[n] : 0; }

  [[nodiscard]] u64 binom(u64 n, u64 k) const {
    if (k > n) return 0;
    u64 result = 1 % p_;
    while (n > 0 || k > 0) {
      u64 nd = n % p_, kd = k % p_;
      if (kd > nd) return 0;
      result = mul_mod(result, mul_mod(fact_[nd], mul_mod(inv_fact_[kd], inv_fact_[nd - kd], p_), p_), p_);
      n /= p_;
      k /= p_;
    }
    return result;
  }

 private:
  u64 p_;
  std::vector<u64> fact_;
  std::vector<u64> inv_fact_;
};

// ---------------------------------------------------------------------------
// Bernoulli numbers

inline constexpr u64 default_exact_bound = 120;

namespace detail {

struct ExactCache {
  std::mutex mutex;
  std::vector<BigRational> bernoulli{BigRational(1)};
  std::vector<BigInt> euler{BigInt(1)};
};

inline ExactCache& exact_cache() {
  static ExactCache cache;
  return cache;
}

}  // namespace detail

/// B_n exactly, from B_0 = 1 and sum_{k<=n} C(n+1, k) B_k = 0.
inline BigRational bernoulli_exact(u64 n, u64 bound = default_exact_bound) {
  if (n > bound) {
    throw error(errc::bound_exceeded, "B_" + std::to_string(n) + " beyond bound " + std::to_string(bound));
  }
  auto& cache = detail::exact_cache();
  std::lock_guard lock(cache.mutex);
  auto& b = cache.bernoulli;
  while (b.size() <= n) {
    u64 m = b.size();
    BigRational sum = 0;
    if (m > 1 && m % 2 == 1) {
      b.emplace_back(0);
      continue;
    }
    for (u64 k = 0; k < m; ++k) {
      if (sgn(b[k]) == 0) continue;
      sum += BigRational(binomial(m + 1, k)) * b[k];
    }
    BigRational next = -sum / BigRational(big(m + 1));
    next.canonicalize();
    b.push_back(next);
  }
  return b[n];
}

/// Incrementally extended table of B_k mod p, valid for k <= p - 3.
class BernoulliModPrime {
 public:
  explicit BernoulliModPrime(u64 p) : p_(p), factorials_(p) {
    if (p <= 3) throw error(errc::not_invertible, "Bernoulli residues need p > 3");
    values_.push_back(1);
  }

  [[nodiscard]] u64 prime() const noexcept { return p_; }
  [[nodiscard]] u64 max_index() const noexcept { return p_ - 3; }

  u64 at(u64 k) {
    if (k > max_index()) {
      throw error(errc::denominator_divisible,
                  "B_" + std::to_string(k) + " is not a p-adic integer test index for p = " +
                      std::to_string(p_));
    }
    while (values_.size() <= k) extend();
    return values_[k];
  }

  [[nodiscard]] const FactorialTable& factorials() const noexcept { return factorials_; }

 private:
  void extend() {
    u64 m = values_.size();
    if (m > 1 && m % 2 == 1) {
      values_.push_back(0);
      return;
    }
    u64 sum = 0;
    for (u64 k = 0; k < m; ++k) {
      if (values_[k] == 0) continue;
      sum = add_mod(sum, mul_mod(factorials_.binom(m + 1, k), values_[k], p_), p_);
    }
    values_.push_back(mul_mod(sub_mod(0, sum, p_), inv_mod((m + 1) % p_, p_), p_));
  }

  u64 p_;
  FactorialTable factorials_;
  std::vector<u64> values_;
};

/// B_k mod p for k = 0 ... p - 3 (odd k > 1 are 0).
inline std::vector<u64> bernoulli_mod_table(u64 p) {
  BernoulliModPrime gen(p);
  std::vector<u64> out;
  out.reserve(p - 2);
  for (u64 k = 0; k <= gen.max_index(); ++k) out.push_back(gen.at(k));
  return out;
}

// ---------------------------------------------------------------------------
// Euler numbers

/// E_n exactly, from E_0 = 1 and sum_{k<=n, k≡n (2)} C(n, k) E_k = 0.
inline BigInt euler_exact(u64 n, u64 bound = default_exact_bound) {
  if (n > bound) {
    throw error(errc::bound_exceeded, "E_" + std::to_string(n) + " beyond bound " + std::to_string(bound));
  }
  auto& cache = detail::exact_cache();
  std::lock_guard lock(cache.mutex);
  auto& e = cache.euler;
  while (e.size() <= n) {
    u64 m = e.size();
    BigInt sum = 0;
    for (u64 k = m % 2; k < m; k += 2) sum += binomial(m, k) * e[k];
    e.push_back(-sum);
  }
  return e[n];
}

/// Incrementally extended E_k mod p (binomials by Lucas' theorem, so any k works).
class EulerModPrime {
 public:
  explicit EulerModPrime(u64 p) : p_(p), factorials_(p) { values_.push_back(1 % p); }

  [[nodiscard]] u64 prime() const noexcept { return p_; }

  u64 at(u64 k) {
    while (values_.size() <= k) {
      u64 m = values_.size();
      u64 sum = 0;
      for (u64 j = m % 2; j < m; j += 2) {
        sum = add_mod(sum, mul_mod(factorials_.binom(m, j), values_[j], p_), p_);
      }
      values_.push_back(sub_mod(0, sum, p_));
    }
    return values_[k];
  }

 private:
  u64 p_;
  FactorialTable factorials_;
  std::vector<u64> values_;
};

/// E_k mod p for k = 0 ... p - 1.
inline std::vector<u64> euler_mod_table(u64 p) {
  EulerModPrime gen(p);
  std::vector<u64> out;
  out.reserve(p);
  for (u64 k = 0; k < p; ++k) out.push_back(gen.at(k));
  return out;
}

// ---------------------------------------------------------------------------
// Harmonic numbers

/// H_n (order 1) or H_n^(2) (order 2) mod p; needs n < p.
inline u64 harmonic_mod(u64 n, u64 p, unsigned order) {
  if (order != 1 && order != 2) throw error(errc::bad_parameters, "harmonic order must be 1 or 2");
  if (n >= p) {
    throw error(errc::not_invertible, "H_" + std::to_string(n) + " has a term 1/p modulo p = " + std::to_string(p));
  }
  u64 sum = 0;
  for (u64 k = 1; k <= n; ++k) {
    u64 inv = inv_mod(k, p);
    sum = add_mod(sum, order == 1 ? inv : mul_mod(inv, inv, p), p);
  }
  return sum;
}

inline BigRational harmonic_exact(u64 n, unsigned order) {
  if (order != 1 && order != 2) throw error(errc::bad_parameters, "harmonic order must be 1 or 2");
  BigRational sum = 0;
  for (u64 k = 1; k <= n; ++k) {
    BigInt den = big(k);
    if (order == 2) den *= den;
    sum += BigRational(BigInt(1), den);
  }
  sum.canonicalize();
  return sum;
}

// ---------------------------------------------------------------------------
// Catalan, Bell, Franel, central trinomial

inline BigInt catalan_exact(u64 n) { return binomial(2 * n, n) / big(n + 1); }

/// Bell numbers b_0..b_n by the Bell (Aitken) triangle.
inline std::vector<BigInt> bell_exact_table(u64 n) {
  std::vector<BigInt> bells{BigInt(1)};
  std::vector<BigInt> row{BigInt(1)};
  for (u64 i = 1; i <= n; ++i) {
    std::vector<BigInt> next{row.back()};
    next.reserve(row.size() + 1);
    for (const BigInt& above : row) next.push_back(next.back() + above);
    bells.push_back(next.front());
    row = std::move(next);
  }
  return bells;
}

inline BigInt bell_exact(u64 n) { return bell_exact_table(n).back(); }

/// f_n^(r) = sum_k C(n, k)^r.
inline BigInt franel_exact(u64 n, unsigned r) {
  BigInt sum = 0;
  for (u64 k = 0; k <= n; ++k) {
    BigInt term;
    mpz_pow_ui(term.get_mpz_t(), binomial(n, k).get_mpz_t(), r);
    sum += term;
  }
  return sum;
}

/// T_n = sum_k C(n, 2k) C(2k, k), the coefficient of x^n in (x^2 + x + 1)^n.
inline BigInt central_trinomial_exact(u64 n) {
  BigInt sum = 0;
  for (u64 k = 0; 2 * k <= n; ++k) sum += binomial(n, 2 * k) * binomial(2 * k, k);
  return sum;
}

/// Bell numbers mod p, one triangle row per step.
class BellModPrime {
 public:
  explicit BellModPrime(u64 p) : p_(p), row_{1 % p}, values_{1 % p} {}

  u64 at(u64 n) {
    while (values_.size() <= n) {
      std::vector<u64> next{row_.back()};
      next.reserve(row_.size() + 1);
      for (u64 above : row_) next.push_back(add_mod(next.back(), above, p_));
      values_.push_back(next.front());
      row_ = std::move(next);
    }
    return values_[n];
  }

 private:
  u64 p_;
  std::vector<u64> row_;
  std::vector<u64> values_;
};

inline constexpr u64 max_combinatorial_index = 100'000'000;

inline u64 catalan_mod(u64 q, const FactorialTable& f) {
  u64 p = f.prime();
  return mul_mod(f.binom(2 * q, q), inv_mod((q + 1) % p, p), p);
}

inline u64 franel_mod(u64 n, unsigned r, const FactorialTable& f) {
  u64 p = f.prime(), sum = 0;
  for (u64 k = 0; k <= n; ++k) sum = add_mod(sum, pow_mod(f.binom(n, k), r, p), p);
  return sum;
}

inline u64 central_trinomial_mod(u64 n, const FactorialTable& f) {
  u64 p = f.prime(), sum = 0;
  for (u64 k = 0; 2 * k <= n; ++k) sum = add_mod(sum, mul_mod(f.binom(n, 2 * k), f.binom(2 * k, k), p), p);
  return sum;
}

/// Catalan, Bell, Franel(r) or central trinomial value of index n modulo the prime p.
inline u64 combinatorial_mod(const SequenceKind& kind, u64 n, u64 p) {
  if (n > max_combinatorial_index) throw error(errc::index_out_of_range, "index too large");
  switch (kind.tag) {
    case SequenceKind::Tag::catalan: return catalan_mod(n, FactorialTable(p));
    case SequenceKind::Tag::bell: return BellModPrime(p).at(n);
    case SequenceKind::Tag::franel: return franel_mod(n, kind.r, FactorialTable(p));
    case SequenceKind::Tag::central_trinomial: return central_trinomial_mod(n, FactorialTable(p));
    default: throw error(errc::bad_parameters, kind.name() + " is not a combinatorial kind");
  }
}

// ---------------------------------------------------------------------------
// Closed forms

inline constexpr u64 max_factorial_index = 1'000'000;

/// Exact value of a closed-form kind at parameter k.
inline BigInt form_exact(const SequenceKind& kind, u64 k) {
  using T = SequenceKind::Tag;
  switch (kind.tag) {
    case T::square_plus_one: return big(k) * big(k) + 1;
    case T::triangular: return big(k) * big(k + 1) / 2;
    case T::consecutive_product: return big(k) * big(k + 1);
    case T::mersenne: return pow2(k) - 1;
    case T::two_pow_minus_n: return pow2(k) - big(k);
    case T::two_pow_plus_one: return pow2(k) + 1;
    case T::two_pow_minus_q: return pow2(k) - big(k);
    case T::factorial: {
      if (k > max_factorial_index) throw error(errc::index_out_of_range, "factorial index too large");
      BigInt r;
      mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
      return r;
    }
    default: throw error(errc::bad_parameters, kind.name() + " is not a closed form");
  }
}

/// Closed-form kind at parameter k, reduced mod m.
inline u64 form_value(const SequenceKind& kind, u64 k, u64 m) {
  using T = SequenceKind::Tag;
  switch (kind.tag) {
    case T::square_plus_one: return add_mod(mul_mod(k % m, k % m, m), 1 % m, m);
    case T::triangular: {
      u64 a = k, b = k + 1;
      (a % 2 == 0 ? a : b) /= 2;
      return mul_mod(a % m, b % m, m);
    }
    case T::consecutive_product: return mul_mod(k % m, (k + 1) % m, m);
    case T::mersenne: return sub_mod(pow_mod(2, k, m), 1 % m, m);
    case T::two_pow_minus_n:
    case T::two_pow_minus_q: return sub_mod(pow_mod(2, k, m), k % m, m);
    case T::two_pow_plus_one: return add_mod(pow_mod(2, k, m), 1 % m, m);
    case T::factorial: {
      if (k >= m) return 0;
      if (k > max_factorial_index) throw error(errc::index_out_of_range, "factorial index too large");
      u64 r = 1 % m;
      for (u64 i = 2; i <= k; ++i) r = mul_mod(r, i, m);
      return r;
    }
    default: throw error(errc::bad_parameters, kind.name() + " is not a closed form");
  }
}

}  // namespace prrlab

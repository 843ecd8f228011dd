#pragma once

// Primitive prime divisors of integer and rational sequences.
//
// The primitive part of term n is what remains after repeatedly dividing out
// gcd(rest, term_k) for every k < n. Its prime factors are exactly the primitive
// prime divisors, so existence is decided without factoring; factoring is only
// needed to name the least one.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/factor.hpp"
#include "prrlab/modular.hpp"
#include "prrlab/primes.hpp"
#include "prrlab/sequences.hpp"

namespace prrlab {

/// Largest index accepted for kinds whose exact terms are cheap (powers, harmonic sums, ...).
inline constexpr u64 max_divisor_index = 20'000;

/// Moduli at or below this use the mod-p tables; larger ones divide the exact term.
inline constexpr u64 mod_path_limit = u64{1} << 16;

enum class DivisorStatus { found, none_exists, inconclusive };

inline std::string to_string(DivisorStatus s) {
  switch (s) {
    case DivisorStatus::found: return "found";
    case DivisorStatus::none_exists: return "none";
    case DivisorStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

struct PrimitiveDivisorRecord {
  SequenceKind kind;
  u64 n = 0;
  DivisorStatus status = DivisorStatus::inconclusive;
  std::optional<BigInt> p;      // least primitive prime, when isolated
  bool least_certified = false;  // no smaller primitive prime can hide in unresolved cofactors
  FactorOutcome evidence;        // factorization of |term_n| (partial when the budget ran out)
  std::string note;
};

/// Exact |term_n| (the absolute reduced numerator for rational kinds).
/// Bernoulli index n means B_{2n}, Euler index n means E_{2n}.
inline BigInt term_value(const SequenceKind& kind, u64 n, u64 exact_bound = default_exact_bound) {
  using T = SequenceKind::Tag;
  if (n == 0) throw error(errc::bad_parameters, "term index starts at 1");
  const bool even_indexed = kind.tag == T::bernoulli || kind.tag == T::euler;
  const u64 limit = even_indexed ? exact_bound / 2 : max_divisor_index;
  if (n > limit) {
    throw error(errc::bound_exceeded, kind.name() + " index " + std::to_string(n) + " beyond " + std::to_string(limit));
  }
  BigInt v;
  switch (kind.tag) {
    case T::two_pow_minus_n:
    case T::mersenne: v = form_exact(kind, n); break;
    case T::fibonacci:
    case T::lucas:
    case T::lucas_u: {
      BigInt prev, cur, a = 1, b = -1;
      if (kind.tag == T::lucas_u) {
        a = big_signed(kind.a);
        b = big_signed(kind.b);
      }
      if (kind.tag == T::lucas) {
        prev = 2;
        cur = 1;
      } else {
        prev = 0;
        cur = 1;
      }
      for (u64 i = 1; i < n; ++i) {
        BigInt next = a * cur - b * prev;
        prev = std::move(cur);
        cur = std::move(next);
      }
      v = cur;
      break;
    }
    case T::bernoulli: v = bernoulli_exact(2 * n, exact_bound).get_num(); break;
    case T::euler: v = euler_exact(2 * n, exact_bound); break;
    case T::harmonic: v = harmonic_exact(n, 1).get_num(); break;
    case T::harmonic2: v = harmonic_exact(n, 2).get_num(); break;
    case T::catalan: v = catalan_exact(n); break;
    case T::bell: v = bell_exact(n); break;
    case T::franel: v = franel_exact(n, kind.r); break;
    case T::central_trinomial: v = central_trinomial_exact(n); break;
    default: throw error(errc::bad_parameters, kind.name() + " has no primitive-divisor scan");
  }
  return abs(v);
}

/// Mod-p divisibility test, or nullopt where the tables do not apply
/// (p too large, p dividing a denominator, or an index beyond the p-integral range).
inline std::optional<bool> divides_term_mod(u64 p, const SequenceKind& kind, u64 k) {
  using T = SequenceKind::Tag;
  if (p < 2 || p > mod_path_limit || k == 0) return std::nullopt;
  switch (kind.tag) {
    case T::two_pow_minus_n:
    case T::mersenne: return form_value(kind, k, p) == 0;
    case T::fibonacci: return fib_pair_mod(k, p).first == 0;
    case T::lucas: return lucas_mod(k, p) == 0;
    case T::lucas_u: return lucas_u_mod(kind.a, kind.b, k, p) == 0;
    case T::bernoulli:
      if (p <= 3 || 2 * k > p - 3) return std::nullopt;
      return BernoulliModPrime(p).at(2 * k) == 0;
    case T::euler:
      if (p == 2) return std::nullopt;
      return EulerModPrime(p).at(2 * k) == 0;
    case T::harmonic:
    case T::harmonic2:
      if (k >= p) return std::nullopt;
      return harmonic_mod(k, p, kind.tag == T::harmonic ? 1 : 2) == 0;
    case T::catalan:
      if ((k + 1) % p == 0) return std::nullopt;
      return catalan_mod(k, FactorialTable(p)) == 0;
    case T::bell: return BellModPrime(p).at(k) == 0;
    case T::franel: return franel_mod(k, kind.r, FactorialTable(p)) == 0;
    case T::central_trinomial: return central_trinomial_mod(k, FactorialTable(p)) == 0;
    default: return std::nullopt;
  }
}

/// Divisibility of the exact term. For rational kinds throws DenominatorDivisible
/// when p divides the reduced denominator (the numerator question is then moot).
inline bool divides_term_exact(const BigInt& p, const SequenceKind& kind, u64 k) {
  using T = SequenceKind::Tag;
  if (kind.is_rational()) {
    BigRational q = kind.tag == T::bernoulli ? bernoulli_exact(2 * k)
                                             : harmonic_exact(k, kind.tag == T::harmonic ? 1 : 2);
    if (mpz_divisible_p(q.get_den().get_mpz_t(), p.get_mpz_t())) {
      throw error(errc::denominator_divisible,
                  p.get_str() + " divides the denominator of " + kind.name() + " term " + std::to_string(k));
    }
    return mpz_divisible_p(q.get_num().get_mpz_t(), p.get_mpz_t()) != 0;
  }
  BigInt v = term_value(kind, k);
  return mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t()) != 0;
}

/// p divides |term_k|: mod p when the tables apply, else exactly.
inline bool divides_term(const BigInt& p, const SequenceKind& kind, u64 k) {
  if (fits_u64(p)) {
    if (auto r = divides_term_mod(to_u64(p), kind, k)) return *r;
  }
  return divides_term_exact(p, kind, k);
}

/// True when p | term_n and p divides no term_k with 0 < k < n.
inline bool verify_primitive(const SequenceKind& kind, u64 n, const BigInt& p) {
  if (!is_prime(p)) throw error(errc::not_prime, p.get_str() + " is not prime");
  auto divides = [&](u64 k) {
    try {
      return divides_term(p, kind, k);
    } catch (const error& e) {
      if (e.code() != errc::denominator_divisible) throw;
      return false;
    }
  };
  if (!divides(n)) return false;
  for (u64 k = 1; k < n; ++k) {
    if (divides(k)) return false;
  }
  return true;
}

namespace detail {

/// Strips from `rest` every prime it shares with `earlier`.
inline void strip_common(BigInt& rest, const BigInt& earlier) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), earlier.get_mpz_t());
  while (g > 1) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), g.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), g.get_mpz_t());
  }
}

inline FactorOutcome merge(const BigInt& n, const FactorOutcome& x, const FactorOutcome& y) {
  std::map<BigInt, unsigned> primes;
  for (const auto* o : {&x, &y}) {
    for (const auto& [q, e] : o->partial.factors) primes[q] += e;
  }
  FactorOutcome out;
  out.partial.n = n;
  for (auto& [q, e] : primes) out.partial.factors.push_back({q, e});
  out.unresolved = x.unresolved;
  out.unresolved.insert(out.unresolved.end(), y.unresolved.begin(), y.unresolved.end());
  std::sort(out.unresolved.begin(), out.unresolved.end());
  return out;
}

/// Record for term n given the exact terms 1..n (terms[k - 1] = |term_k|).
inline PrimitiveDivisorRecord classify(const SequenceKind& kind, u64 n, const std::vector<BigInt>& terms,
                                       FactorBudget budget) {
  PrimitiveDivisorRecord rec;
  rec.kind = kind;
  rec.n = n;
  const BigInt& term = terms[n - 1];
  if (term == 0) throw error(errc::bad_parameters, kind.name() + " term " + std::to_string(n) + " is zero");

  BigInt primitive = term;
  for (u64 k = 1; k < n && primitive > 1; ++k) strip_common(primitive, terms[k - 1]);
  BigInt shared = term / primitive;

  FactorOutcome fp = factorize(primitive, budget);
  rec.evidence = merge(term, factorize(shared, budget), fp);

  if (primitive == 1) {
    rec.status = rec.evidence.complete() ? DivisorStatus::none_exists : DivisorStatus::inconclusive;
    if (term == 1) rec.note = "term has no prime divisors";
    return rec;
  }
  rec.status = DivisorStatus::found;
  if (!fp.partial.factors.empty()) {
    rec.p = fp.partial.factors.front().prime;
    // unresolved cofactors have no prime factor below the trial-division bound
    rec.least_certified = fp.complete() || *rec.p < big(trial_division_bound);
  }
  if (!rec.least_certified) rec.note = "primitive divisor exists; least one not isolated within budget";
  return rec;
}

}  // namespace detail

inline PrimitiveDivisorRecord least_primitive_prime_divisor(const SequenceKind& kind, u64 n,
                                                            FactorBudget budget = {}) {
  std::vector<BigInt> terms;
  terms.reserve(n);
  for (u64 k = 1; k <= n; ++k) terms.push_back(term_value(kind, k));
  return detail::classify(kind, n, terms, budget);
}

/// One record per n in [n_min, n_max], in order.
inline std::vector<PrimitiveDivisorRecord> scan(const SequenceKind& kind, u64 n_min, u64 n_max,
                                                FactorBudget budget = {}) {
  if (n_min == 0 || n_min > n_max) throw error(errc::bad_parameters, "need 1 <= n_min <= n_max");
  std::vector<BigInt> terms;
  terms.reserve(n_max);
  for (u64 k = 1; k <= n_max; ++k) terms.push_back(term_value(kind, k));
  std::vector<PrimitiveDivisorRecord> out;
  for (u64 n = n_min; n <= n_max; ++n) out.push_back(detail::classify(kind, n, terms, budget));
  return out;
}

}  // namespace prrlab

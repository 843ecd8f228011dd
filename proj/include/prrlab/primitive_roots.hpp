#pragma once

// Primitive-root certification and the special-form primitive-root searches.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/factor.hpp"
#include "prrlab/modular.hpp"
#include "prrlab/primes.hpp"
#include "prrlab/sequences.hpp"

namespace prrlab {

/// The cyclic group F_p^* together with the factorization of its order p - 1.
class UnitGroup {
 public:
  UnitGroup(u64 p, WordFactors order_factors) : p_(p), factors_(std::move(order_factors)) {
    if (p < 2 || p >= word_modulus_limit) throw error(errc::bad_modulus, "prime out of range");
    u64 product = 1;
    for (auto [q, e] : factors_) {
      for (unsigned i = 0; i < e; ++i) product *= q;
    }
    if (product != p - 1) {
      throw error(errc::bad_factorization, "factors do not multiply to " + std::to_string(p - 1));
    }
    for (auto [q, e] : factors_) cofactors_.push_back((p - 1) / q);
  }

  /// From a big-integer Factorization of p - 1.
  UnitGroup(u64 p, const Factorization& order) : UnitGroup(p, to_word_factors(order)) {}

  static UnitGroup of(u64 p) { return UnitGroup(p, factor_word(p - 1)); }
  static UnitGroup of(u64 p, const SmallestFactorTable& table) {
    return p - 1 <= table.limit() ? UnitGroup(p, table.factor(p - 1)) : of(p);
  }

  [[nodiscard]] u64 prime() const noexcept { return p_; }
  [[nodiscard]] const WordFactors& factors() const noexcept { return factors_; }
  [[nodiscard]] u64 phi_of_order() const { return euler_phi(factors_); }

  /// g generates F_p^*: g ≢ 0 and g^((p-1)/q) ≠ 1 for every prime q | p - 1.
  [[nodiscard]] bool is_generator(u64 g) const {
    g %= p_;
    if (g == 0) return false;
    for (u64 e : cofactors_) {
      if (pow_mod(g, e, p_) == 1) return false;
    }
    return true;
  }

  /// Least e >= 1 with g^e ≡ 1, found by stripping prime factors from p - 1.
  [[nodiscard]] u64 order(u64 g) const {
    g %= p_;
    if (g == 0) throw error(errc::zero_input, "p divides g");
    u64 e = p_ - 1;
    for (auto [q, k] : factors_) {
      for (unsigned i = 0; i < k && e % q == 0; ++i) {
        if (pow_mod(g, e / q, p_) != 1) break;
        e /= q;
      }
    }
    return e;
  }

 private:
  static WordFactors to_word_factors(const Factorization& f) {
    WordFactors out;
    for (const auto& [q, e] : f.factors) out.emplace_back(to_u64(q), e);
    return out;
  }

  u64 p_;
  WordFactors factors_;
  std::vector<u64> cofactors_;
};

inline bool is_primitive_root(i64 g, const UnitGroup& group) {
  return group.is_generator(reduce(g, group.prime()));
}

inline bool is_primitive_root(i64 g, u64 p, const Factorization& order) {
  return is_primitive_root(g, UnitGroup(p, order));
}

inline u64 multiplicative_order(i64 g, const UnitGroup& group) {
  return group.order(reduce(g, group.prime()));
}

/// |G(p)| by testing every g in [1, p - 1].
inline u64 count_primitive_roots(u64 p) {
  UnitGroup group = UnitGroup::of(p);
  u64 count = 0;
  for (u64 g = 1; g < p; ++g) count += group.is_generator(g) ? 1 : 0;
  return count;
}

/// One verified instance of a primitive-root conjecture.
struct WitnessRecord {
  std::string conjecture;
  u64 p = 0;
  std::vector<u64> params;  // k, n, q or g; (n, k) for C3.2ii
  u64 witness = 0;          // the primitive root's residue in [1, p - 1]
  bool unique = false;      // exactly one witness under the cap

  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

/// Search definition for a primitive-root registry entry.
struct WitnessSearchSpec {
  std::string_view id;
  u64 min_prime;
  std::string_view statement;
};

inline constexpr std::array<WitnessSearchSpec, 18> witness_searches{{
    {"C2.1iii", 2, "F_k + 1 is a primitive root for some 1 <= k <= sqrt(p+2) + 2"},
    {"C2.2iii", 2, "L_k + 1 is a primitive root for some 1 <= k < sqrt(p) + 2"},
    {"C3.1i", 2, "a primitive root g < p of the form k^2 + 1"},
    {"C3.1ii-a", 5, "a triangular primitive root g < p (p > 3)"},
    {"C3.1ii-b", 13, "a primitive root g = k(k+1) < p (p > 11)"},
    {"C3.2i", 3, "a primitive root g = p_1 + ... + p_n < p (p odd)"},
    {"C3.2ii", 3, "s_k is a primitive root modulo p_n for some k in 1..n (n > 1)"},
    {"C3.3i", 5, "M_q = 2^q - 1 is a primitive root for a prime q < p/2 (p > 3)"},
    {"C3.3ii", 11, "q! is a primitive root for a prime q < p/2 (p > 7)"},
    {"C3.3iii", 5, "g, 2^g - 1 and (g-1)! are all primitive roots for some 0 < g < p (p > 3)"},
    {"C3.4", 3, "q and 2^q - q are primitive roots for a prime q < p (p odd)"},
    {"C3.5i", 5, "B_{q-1} is a primitive root for a prime q < p (p > 3)"},
    {"C3.5ii", 17, "E_{q-1} is a primitive root for a prime q < p (p > 13)"},
    {"C3.6i", 7, "H_{q-1} is a primitive root for a prime q <= (p+1)/2 (p > 5)"},
    {"C3.6ii", 7, "H^(2)_{q-1} is a primitive root for a prime q <= (p-1)/2 (p > 5)"},
    {"C3.7i", 5, "the Catalan number C_q is a primitive root for a prime q < p/2 (p > 3)"},
    {"C3.7ii", 5, "the Bell number b_q is a primitive root for a prime q < p/2 (p > 3)"},
    {"C3.7iii", 5, "the Franel number f_q is a primitive root for a prime q < p/2 (p > 3)"},
}};

inline const WitnessSearchSpec* find_witness_search(std::string_view id) {
  for (const auto& s : witness_searches) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

namespace detail {

/// Keeps the first hit and whether a second one exists.
class HitCollector {
 public:
  /// Returns true once a second hit has been seen (the scan can stop).
  bool add(std::vector<u64> params, u64 value) {
    if (!first_) {
      first_ = WitnessRecord{{}, 0, std::move(params), value, true};
      return false;
    }
    first_->unique = false;
    return true;
  }

  [[nodiscard]] std::optional<WitnessRecord> take() { return std::move(first_); }

 private:
  std::optional<WitnessRecord> first_;
};

}  // namespace detail

/// Runs the registry searches for one prime at a time against a shared sieve.
/// Immutable after construction; safe to share across threads.
class WitnessFinder {
 public:
  explicit WitnessFinder(const PrimeSieve& sieve) : sieve_(&sieve) {}

  [[nodiscard]] const PrimeSieve& sieve() const noexcept { return *sieve_; }

  /// Least-parameter witness for `id` at prime p, or nullopt (Exhausted).
  [[nodiscard]] std::optional<WitnessRecord> find(std::string_view id, u64 p) const {
    return find(id, p, UnitGroup::of(p));
  }

  [[nodiscard]] std::optional<WitnessRecord> find(std::string_view id, u64 p, const UnitGroup& group) const {
    const WitnessSearchSpec* spec = find_witness_search(id);
    if (spec == nullptr) throw error(errc::registry_unknown, std::string(id));
    if (group.prime() != p) throw error(errc::bad_factorization, "group does not match p");
    if (p < spec->min_prime || !prrlab::is_prime(p)) {
      throw error(errc::bad_parameters, std::string(id) + " does not apply to p = " + std::to_string(p));
    }
    if (p > sieve_->limit()) throw error(errc::sieve_too_small, "sieve must reach p");

    detail::HitCollector hits;
    scan(id, p, group, hits);
    auto result = hits.take();
    if (result) {
      result->conjecture = std::string(id);
      result->p = p;
    }
    return result;
  }

 private:
  template <class Fn>
  void for_primes_below(u64 exclusive_limit, Fn&& fn) const {
    for (std::uint32_t q : sieve_->primes()) {
      if (q >= exclusive_limit) return;
      if (fn(u64{q})) return;
    }
  }

  void scan(std::string_view id, u64 p, const UnitGroup& g, detail::HitCollector& hits) const {
    if (id == "C2.1iii") {
      u64 cap = isqrt(p + 2) + 2;
      u64 f = 1 % p, next = 1 % p;  // F_1, F_2
      for (u64 k = 1; k <= cap; ++k) {
        u64 v = add_mod(f, 1 % p, p);
        if (g.is_generator(v) && hits.add({k}, v)) return;
        u64 h = add_mod(f, next, p);
        f = next;
        next = h;
      }
    } else if (id == "C2.2iii") {
      u64 l = 1 % p, next = 3 % p;  // L_1, L_2
      for (u64 k = 1; k <= 2 || (k - 2) * (k - 2) < p; ++k) {
        u64 v = add_mod(l, 1 % p, p);
        if (g.is_generator(v) && hits.add({k}, v)) return;
        u64 h = add_mod(l, next, p);
        l = next;
        next = h;
      }
    } else if (id == "C3.1i") {
      for (u64 k = 0; k * k + 1 < p; ++k) {
        if (g.is_generator(k * k + 1) && hits.add({k}, k * k + 1)) return;
      }
    } else if (id == "C3.1ii-a") {
      for (u64 k = 1; k * (k + 1) / 2 < p; ++k) {
        u64 v = k * (k + 1) / 2;
        if (g.is_generator(v) && hits.add({k}, v)) return;
      }
    } else if (id == "C3.1ii-b") {
      for (u64 k = 1; k * (k + 1) < p; ++k) {
        u64 v = k * (k + 1);
        if (g.is_generator(v) && hits.add({k}, v)) return;
      }
    } else if (id == "C3.2i") {
      u64 s = 0;
      for (std::size_t n = 1; n <= sieve_->prime_count(); ++n) {
        s += sieve_->nth_prime(n);
        if (s >= p) return;
        if (g.is_generator(s) && hits.add({n}, s)) return;
      }
    } else if (id == "C3.2ii") {
      std::size_t n = sieve_->pi(p);
      if (n < 2) throw error(errc::bad_parameters, "C3.2ii needs n > 1");
      u64 s = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        s = sieve_->nth_prime(k) - s;
        if (g.is_generator(s % p) && hits.add({n, k}, s % p)) return;
      }
    } else if (id == "C3.3i") {
      for_primes_below((p + 1) / 2, [&](u64 q) {
        u64 v = form_value(SequenceKind::of(SequenceKind::Tag::mersenne), q, p);
        return g.is_generator(v) && hits.add({q}, v);
      });
    } else if (id == "C3.3ii") {
      u64 fact = 1, done = 1;
      for_primes_below((p + 1) / 2, [&](u64 q) {
        for (; done < q; ++done) fact = mul_mod(fact, done + 1, p);
        return g.is_generator(fact) && hits.add({q}, fact);
      });
    } else if (id == "C3.3iii") {
      u64 fact = 1;  // (g - 1)!
      for (u64 x = 1; x < p; ++x) {
        if (g.is_generator(x) && g.is_generator(sub_mod(pow_mod(2, x, p), 1, p)) && g.is_generator(fact) &&
            hits.add({x}, x)) {
          return;
        }
        fact = mul_mod(fact, x, p);
      }
    } else if (id == "C3.4") {
      for_primes_below(p, [&](u64 q) {
        u64 v = sub_mod(pow_mod(2, q, p), q % p, p);
        return g.is_generator(q) && g.is_generator(v) && hits.add({q}, v);
      });
    } else if (id == "C3.5i") {
      BernoulliModPrime bern(p);
      for_primes_below(p, [&](u64 q) {
        if (q - 1 > bern.max_index()) return false;  // B_{q-1} not p-integral: skipped
        u64 v = bern.at(q - 1);
        return g.is_generator(v) && hits.add({q}, v);
      });
    } else if (id == "C3.5ii") {
      EulerModPrime eul(p);
      for_primes_below(p, [&](u64 q) {
        u64 v = eul.at(q - 1);
        return g.is_generator(v) && hits.add({q}, v);
      });
    } else if (id == "C3.6i" || id == "C3.6ii") {
      const bool second_order = id == "C3.6ii";
      const u64 limit = second_order ? (p - 1) / 2 : (p + 1) / 2;  // q <= limit
      u64 h = 0, done = 0;                                         // H_done
      for_primes_below(limit + 1, [&](u64 q) {
        for (; done < q - 1; ++done) {
          u64 inv = inv_mod(done + 1, p);
          h = add_mod(h, second_order ? mul_mod(inv, inv, p) : inv, p);
        }
        return g.is_generator(h) && hits.add({q}, h);
      });
    } else if (id == "C3.7i" || id == "C3.7iii") {
      FactorialTable f(p);
      const bool catalan = id == "C3.7i";
      for_primes_below((p + 1) / 2, [&](u64 q) {
        u64 v = catalan ? catalan_mod(q, f) : franel_mod(q, 3, f);
        return g.is_generator(v) && hits.add({q}, v);
      });
    } else if (id == "C3.7ii") {
      BellModPrime bell(p);
      for_primes_below((p + 1) / 2, [&](u64 q) {
        u64 v = bell.at(q);
        return g.is_generator(v) && hits.add({q}, v);
      });
    }
  }

  const PrimeSieve* sieve_;
};

/// One-off search: builds a sieve up to p first.
inline std::optional<WitnessRecord> find_witness(u64 p, std::string_view id) {
  PrimeSieve sieve(std::max<u64>(p, 2));
  return WitnessFinder(sieve).find(id, p);
}

/// Whether some Fibonacci number is a primitive root mod p (one Pisano period scanned).
inline bool fibonacci_primitive_root_exists(u64 p) {
  UnitGroup group = UnitGroup::of(p);
  std::vector<bool> seen(p, false);
  u64 f = 0, g = 1 % p;
  do {
    if (!seen[f]) {
      seen[f] = true;
      if (group.is_generator(f)) return true;
    }
    u64 h = add_mod(f, g, p);
    f = g;
    g = h;
  } while (!(f == 0 && g == 1 % p));
  return false;
}

/// Same over the Lucas numbers L_0 = 2, L_1 = 1, ...
inline bool lucas_primitive_root_exists(u64 p) {
  UnitGroup group = UnitGroup::of(p);
  std::vector<bool> seen(p, false);
  const u64 l0 = 2 % p, l1 = 1 % p;
  u64 f = l0, g = l1;
  do {
    if (!seen[f]) {
      seen[f] = true;
      if (group.is_generator(f)) return true;
    }
    u64 h = add_mod(f, g, p);
    f = g;
    g = h;
  } while (!(f == l0 && g == l1));
  return false;
}

/// Whether some prime q < p makes 2^q + 1 a primitive root mod p.
inline bool two_pow_plus_one_primitive_root_exists(u64 p) {
  UnitGroup group = UnitGroup::of(p);
  for (u64 q = 2; q < p; ++q) {
    if (is_prime(q) && group.is_generator(add_mod(pow_mod(2, q, p), 1, p))) return true;
  }
  return false;
}

}  // namespace prrlab

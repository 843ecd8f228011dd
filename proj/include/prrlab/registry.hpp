#pragma once

// The conjecture registry: one entry per verifiable statement, with its domain,
// hypothesis and excluded indices.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prrlab/error.hpp"
#include "prrlab/modular.hpp"
#include "prrlab/sequences.hpp"

namespace prrlab {

enum class Domain { primes, indices };

enum class SearchKind {
  fib_qnr,          // least Fibonacci nonresidue below p/2
  fib_qnr_growth,   // least Fibonacci nonresidue, reported with its exponent
  lucas_qnr,        // least Lucas nonresidue below p
  lucas_qnr_growth,
  mersenne_cubic,   // least 2^k - 1 cubic nonresidue below p/2
  two_pow_plus_one_qnr,
  witness,          // a primitive-root search (see primitive_roots.hpp)
  primitive_divisor,
};

struct ConjectureSpec {
  std::string_view id;
  Domain domain;
  u64 min_key;  // least prime p or index n the statement covers
  SearchKind search;
  std::string_view statement;
  std::vector<u64> exception_set{};
  std::optional<SequenceKind> sequence{};
  bool requires_one_mod_three = false;
  bool asymptotic = false;  // failures are reported but are not counterexamples
};

inline const std::vector<ConjectureSpec>& registry() {
  using T = SequenceKind::Tag;
  static const std::vector<ConjectureSpec> specs = {
      {"C2.1i", Domain::primes, 5, SearchKind::fib_qnr, "a Fibonacci number f < p/2 is a quadratic nonresidue mod p"},
      {"C2.1ii", Domain::primes, 3, SearchKind::fib_qnr_growth,
       "the least Fibonacci nonresidue f(p) grows like o(p^0.7) (reported, not asserted)", {}, {}, false, true},
      {"C2.1iii", Domain::primes, 2, SearchKind::witness, "F_k + 1 is a primitive root for some k <= sqrt(p+2) + 2"},
      {"C2.2i", Domain::primes, 3, SearchKind::lucas_qnr, "a Lucas number L_k < p is a quadratic nonresidue mod p"},
      {"C2.2ii", Domain::primes, 3, SearchKind::lucas_qnr_growth,
       "the least Lucas nonresidue l(p) grows like o(p^0.7) (reported, not asserted)", {}, {}, false, true},
      {"C2.2iii", Domain::primes, 2, SearchKind::witness, "L_k + 1 is a primitive root for some k < sqrt(p) + 2"},
      {"C2.3", Domain::primes, 7, SearchKind::mersenne_cubic,
       "for p = 1 mod 3 some 2^k - 1 < p/2 is a cubic nonresidue", {}, {}, true},
      {"C2.4", Domain::primes, 7, SearchKind::two_pow_plus_one_qnr,
       "some prime q < p makes 2^q + 1 a quadratic nonresidue (p > 5)"},
      {"C3.1i", Domain::primes, 2, SearchKind::witness, "a primitive root g < p of the form k^2 + 1"},
      {"C3.1ii-a", Domain::primes, 5, SearchKind::witness, "a triangular primitive root g < p (p > 3)"},
      {"C3.1ii-b", Domain::primes, 13, SearchKind::witness, "a primitive root g = k(k+1) < p (p > 11)"},
      {"C3.2i", Domain::primes, 3, SearchKind::witness, "a primitive root g = p_1 + ... + p_n < p"},
      {"C3.2ii", Domain::indices, 2, SearchKind::witness, "some s_k, 1 <= k <= n, is a primitive root mod p_n"},
      {"C3.3i", Domain::primes, 5, SearchKind::witness, "2^q - 1 is a primitive root for a prime q < p/2"},
      {"C3.3ii", Domain::primes, 11, SearchKind::witness, "q! is a primitive root for a prime q < p/2"},
      {"C3.3iii", Domain::primes, 5, SearchKind::witness, "g, 2^g - 1 and (g-1)! are all primitive roots"},
      {"C3.4", Domain::primes, 3, SearchKind::witness, "q and 2^q - q are primitive roots for a prime q < p"},
      {"C3.5i", Domain::primes, 5, SearchKind::witness, "B_{q-1} is a primitive root for a prime q < p"},
      {"C3.5ii", Domain::primes, 17, SearchKind::witness, "E_{q-1} is a primitive root for a prime q < p"},
      {"C3.6i", Domain::primes, 7, SearchKind::witness, "H_{q-1} is a primitive root for a prime q <= (p+1)/2"},
      {"C3.6ii", Domain::primes, 7, SearchKind::witness, "H^(2)_{q-1} is a primitive root for a prime q <= (p-1)/2"},
      {"C3.7i", Domain::primes, 5, SearchKind::witness, "C_q is a primitive root for a prime q < p/2"},
      {"C3.7ii", Domain::primes, 5, SearchKind::witness, "b_q is a primitive root for a prime q < p/2"},
      {"C3.7iii", Domain::primes, 5, SearchKind::witness, "f_q is a primitive root for a prime q < p/2"},
      {"C4.1", Domain::indices, 2, SearchKind::primitive_divisor, "2^n - n has a primitive prime divisor",
       {5, 16}, SequenceKind::of(T::two_pow_minus_n)},
      {"C4.2-B", Domain::indices, 5, SearchKind::primitive_divisor, "B_{2n} has a primitive prime divisor (n > 4)",
       {}, SequenceKind::of(T::bernoulli)},
      {"C4.2-E", Domain::indices, 2, SearchKind::primitive_divisor, "E_{2n} has a primitive prime divisor (n > 1)",
       {}, SequenceKind::of(T::euler)},
      {"C4.3i", Domain::indices, 2, SearchKind::primitive_divisor, "H_n has a primitive prime divisor (n > 1)",
       {7}, SequenceKind::of(T::harmonic)},
      {"C4.3ii", Domain::indices, 2, SearchKind::primitive_divisor, "H^(2)_n has a primitive prime divisor (n > 1)",
       {}, SequenceKind::of(T::harmonic2)},
      {"C4.4i", Domain::indices, 1, SearchKind::primitive_divisor, "the Franel number f_n has a primitive prime divisor",
       {}, SequenceKind::franel(3)},
      {"C4.4ii", Domain::indices, 1, SearchKind::primitive_divisor, "f^(4)_n has a primitive prime divisor",
       {}, SequenceKind::franel(4)},
      {"C4.4iii", Domain::indices, 1, SearchKind::primitive_divisor,
       "f^(r)_n has a primitive prime divisor for large n (r = 5; failures reported, not asserted)", {},
       SequenceKind::franel(5), false, true},
      {"C4.5", Domain::indices, 2, SearchKind::primitive_divisor, "T_n has a primitive prime divisor (n > 1)",
       {}, SequenceKind::of(T::central_trinomial)},
  };
  return specs;
}

inline const ConjectureSpec& find_conjecture(std::string_view id) {
  for (const auto& s : registry()) {
    if (s.id == id) return s;
  }
  throw error(errc::registry_unknown, "unknown conjecture id " + std::string(id));
}

/// The registry entry with a different Franel order (for C4.4iii with r > 4).
inline ConjectureSpec with_franel_order(ConjectureSpec spec, unsigned r) {
  if (!spec.sequence || spec.sequence->tag != SequenceKind::Tag::franel) {
    throw error(errc::bad_parameters, std::string(spec.id) + " has no Franel order");
  }
  spec.sequence = SequenceKind::franel(r);
  return spec;
}

inline bool in_exception_set(const ConjectureSpec& spec, u64 key) {
  return std::find(spec.exception_set.begin(), spec.exception_set.end(), key) != spec.exception_set.end();
}

/// Sequence names accepted on the command line.
inline SequenceKind parse_sequence_kind(std::string_view name) {
  using T = SequenceKind::Tag;
  if (name == "two_pow_minus_n" || name == "2^n-n") return SequenceKind::of(T::two_pow_minus_n);
  if (name == "bernoulli") return SequenceKind::of(T::bernoulli);
  if (name == "euler") return SequenceKind::of(T::euler);
  if (name == "harmonic") return SequenceKind::of(T::harmonic);
  if (name == "harmonic2") return SequenceKind::of(T::harmonic2);
  if (name == "trinomial") return SequenceKind::of(T::central_trinomial);
  if (name == "catalan") return SequenceKind::of(T::catalan);
  if (name == "bell") return SequenceKind::of(T::bell);
  if (name == "fibonacci") return SequenceKind::of(T::fibonacci);
  if (name == "lucas") return SequenceKind::of(T::lucas);
  if (name == "mersenne") return SequenceKind::of(T::mersenne);
  if (name == "franel") return SequenceKind::franel(3);
  if (name.starts_with("franel")) {
    std::string digits(name.substr(6));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return SequenceKind::franel(static_cast<unsigned>(std::stoul(digits)));
    }
  }
  throw error(errc::bad_parameters, "unknown sequence kind " + std::string(name));
}

/// Least index each kind's primitive-divisor statement covers.
inline u64 default_min_index(const SequenceKind& kind) {
  switch (kind.tag) {
    case SequenceKind::Tag::bernoulli: return 5;
    case SequenceKind::Tag::franel:
    case SequenceKind::Tag::fibonacci:
    case SequenceKind::Tag::lucas:
    case SequenceKind::Tag::mersenne: return 1;
    default: return 2;
  }
}

}  // namespace prrlab

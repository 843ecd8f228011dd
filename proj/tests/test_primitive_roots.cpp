#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prrlab/primitive_roots.hpp"

using namespace prrlab;

TEST(UnitGroup, Examples) {
  UnitGroup g31 = UnitGroup::of(31);
  EXPECT_TRUE(is_primitive_root(17, g31));
  EXPECT_FALSE(is_primitive_root(1, g31));
  EXPECT_EQ(multiplicative_order(1, g31), 1u);
  EXPECT_EQ(multiplicative_order(2, g31), 5u);
  EXPECT_EQ(multiplicative_order(2, UnitGroup::of(79)), 39u);
  EXPECT_EQ(count_primitive_roots(3), 1u);
  EXPECT_EQ(count_primitive_roots(13), 4u);
  EXPECT_EQ(count_primitive_roots(31), 8u);
  EXPECT_THROW(multiplicative_order(31, g31), error);
}

TEST(UnitGroup, GeneratorsOf13) {
  UnitGroup g = UnitGroup::of(13);
  std::vector<u64> roots;
  for (u64 x = 1; x < 13; ++x) {
    if (g.is_generator(x)) roots.push_back(x);
  }
  EXPECT_EQ(roots, (std::vector<u64>{2, 6, 7, 11}));
}

TEST(UnitGroup, FactorizationIsChecked) {
  EXPECT_THROW(UnitGroup(31, WordFactors{{2, 1}, {3, 1}}), error);
  Factorization f{30, {{2, 1}, {3, 1}, {5, 1}}};
  EXPECT_TRUE(is_primitive_root(17, 31, f));
  Factorization bad{30, {{2, 1}, {3, 1}, {7, 1}}};
  try {
    is_primitive_root(17, 31, bad);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::bad_factorization);
  }
}

TEST(UnitGroup, GeneratorIffFullOrder) {
  for (u64 p : oracle::primes_upto(2000)) {
    UnitGroup g = UnitGroup::of(p);
    for (u64 x = 1; x < p; ++x) {
      const u64 ord = oracle::order(x, p);
      ASSERT_EQ(g.is_generator(x), ord == p - 1) << x << " mod " << p;
      ASSERT_EQ(g.order(x), ord);
    }
  }
}

TEST(UnitGroup, CountIsPhi) {
  for (u64 p : oracle::primes_upto(10000)) ASSERT_EQ(count_primitive_roots(p), oracle::phi(p - 1)) << p;
}

TEST(FindWitness, Examples) {
  auto r31 = find_witness(31, "C3.1i");
  ASSERT_TRUE(r31);
  EXPECT_EQ(r31->params, std::vector<u64>{4});
  EXPECT_EQ(r31->witness, 17u);
  EXPECT_TRUE(r31->unique);

  auto r241 = find_witness(241, "C3.2i");
  ASSERT_TRUE(r241);
  EXPECT_EQ(r241->params, std::vector<u64>{10});
  EXPECT_EQ(r241->witness, 129u);
  EXPECT_TRUE(r241->unique);

  auto r23 = find_witness(23, "C3.4");
  ASSERT_TRUE(r23);
  EXPECT_EQ(r23->params, std::vector<u64>{19});
  EXPECT_EQ(r23->witness, 7u);
  EXPECT_TRUE(r23->unique);

  auto r19 = find_witness(19, "C3.5i");
  ASSERT_TRUE(r19);
  EXPECT_EQ(r19->params, std::vector<u64>{17});
  EXPECT_EQ(r19->witness, 15u);
  EXPECT_TRUE(r19->unique);

  auto r43 = find_witness(43, "C3.3iii");
  ASSERT_TRUE(r43);
  EXPECT_TRUE(r43->unique);
}

TEST(FindWitness, Errors) {
  EXPECT_THROW(find_witness(31, "C9.9"), error);
  EXPECT_THROW(find_witness(3, "C3.3i"), error);
  EXPECT_THROW(find_witness(33, "C3.4"), error);
  PrimeSieve sieve(100);
  EXPECT_THROW(WitnessFinder(sieve).find("C3.4", 101), error);
}

TEST(PrimitiveRootExistence, Examples) {
  EXPECT_TRUE(fibonacci_primitive_root_exists(5));
  EXPECT_FALSE(fibonacci_primitive_root_exists(3001));
  EXPECT_FALSE(lucas_primitive_root_exists(28657));
  EXPECT_FALSE(two_pow_plus_one_primitive_root_exists(2089));
  EXPECT_TRUE(two_pow_plus_one_primitive_root_exists(2083));
}

namespace {

struct Candidate {
  std::vector<u64> params;
  u64 value;
  bool extra_ok = true;
};

u64 mod(const mpz_class& v, u64 p) {
  mpz_class r = v % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

u64 mod(const mpq_class& v, u64 p) {
  mpz_class inv, m = static_cast<unsigned long>(p);
  mpz_class den = v.get_den() % m;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return mod(mpz_class(v.get_num() * inv), p);
}

mpz_class pow2(u64 e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

mpz_class binom(u64 n, u64 k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(u64 n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Every candidate of the search, in scan order, from exact values.
std::vector<Candidate> candidates(std::string_view id, u64 p, const std::vector<bool>& pr) {
  static const auto bern = oracle::bernoulli(400);
  static const auto eul = oracle::euler(400);
  static const auto fib = oracle::fibonacci(200);
  static const auto bells = oracle::bell(200);
  const auto primes = oracle::primes_upto(p);
  std::vector<Candidate> out;
  auto lucas = [&](u64 k) { return mpz_class(fib[k + 1] + (k ? fib[k - 1] : mpz_class(1))); };
  if (id == "C2.1iii") {
    for (u64 k = 1; k <= 2 || (k - 2) * (k - 2) <= p + 2; ++k) out.push_back({{k}, mod(mpz_class(fib[k] + 1), p)});
  } else if (id == "C2.2iii") {
    for (u64 k = 1; k <= 2 || (k - 2) * (k - 2) < p; ++k) out.push_back({{k}, mod(mpz_class(lucas(k) + 1), p)});
  } else if (id == "C3.1i") {
    for (u64 k = 0; k * k + 1 < p; ++k) out.push_back({{k}, k * k + 1});
  } else if (id == "C3.1ii-a") {
    for (u64 k = 1; k * (k + 1) / 2 < p; ++k) out.push_back({{k}, k * (k + 1) / 2});
  } else if (id == "C3.1ii-b") {
    for (u64 k = 1; k * (k + 1) < p; ++k) out.push_back({{k}, k * (k + 1)});
  } else if (id == "C3.2i") {
    u64 s = 0;
    for (std::size_t n = 0; n < primes.size(); ++n) {
      s += primes[n];
      if (s >= p) break;
      out.push_back({{n + 1}, s});
    }
  } else if (id == "C3.2ii") {
    const u64 n = primes.size();
    i64 s = 0;
    for (u64 k = 1; k <= n; ++k) {
      s = static_cast<i64>(primes[k - 1]) - s;
      out.push_back({{n, k}, static_cast<u64>(s) % p});
    }
  } else if (id == "C3.4") {
    for (u64 q : primes) {
      if (q < p) out.push_back({{q}, mod(mpz_class(pow2(q) - q), p), pr[q % p]});
    }
  } else if (id == "C3.5i") {
    for (u64 q : primes) {
      if (q < p) out.push_back({{q}, mod(bern[q - 1], p)});
    }
  } else if (id == "C3.5ii") {
    for (u64 q : primes) {
      if (q < p) out.push_back({{q}, mod(eul[q - 1], p)});
    }
  } else if (id == "C3.6i" || id == "C3.6ii") {
    const u64 limit = id == "C3.6i" ? (p + 1) / 2 : (p - 1) / 2;
    for (u64 q : primes) {
      if (q <= limit) out.push_back({{q}, mod(oracle::harmonic(q - 1, id == "C3.6i" ? 1 : 2), p)});
    }
  } else if (id == "C3.3iii") {
    for (u64 x = 1; x < p; ++x) {
      out.push_back({{x}, x, pr[mod(mpz_class(pow2(x) - 1), p)] && pr[mod(factorial(x - 1), p)]});
    }
  } else {
    for (u64 q : primes) {
      if (2 * q >= p) break;
      mpz_class v;
      if (id == "C3.3i") v = pow2(q) - 1;
      if (id == "C3.3ii") v = factorial(q);
      if (id == "C3.7i") v = binom(2 * q, q) / (q + 1);
      if (id == "C3.7ii") v = bells[q];
      if (id == "C3.7iii") {
        for (u64 k = 0; k <= q; ++k) v += binom(q, k) * binom(q, k) * binom(q, k);
      }
      out.push_back({{q}, mod(v, p)});
    }
  }
  return out;
}

}  // namespace

TEST(FindWitness, MatchesExhaustiveOracle) {
  const u64 bound = 400;
  PrimeSieve sieve(bound);
  WitnessFinder finder(sieve);
  for (const auto& search : witness_searches) {
    for (u64 p : oracle::primes_upto(bound)) {
      if (p < search.min_prime) continue;
      std::vector<bool> pr(p, false);
      for (u64 x = 1; x < p; ++x) pr[x] = oracle::order(x, p) == p - 1;
      std::vector<Candidate> hits;
      for (auto& c : candidates(search.id, p, pr)) {
        if (c.value != 0 && pr[c.value] && c.extra_ok) hits.push_back(c);
      }
      auto got = finder.find(search.id, p);
      if (hits.empty()) {
        EXPECT_FALSE(got) << search.id << " p=" << p;
        continue;
      }
      ASSERT_TRUE(got) << search.id << " p=" << p;
      EXPECT_EQ(got->params, hits.front().params) << search.id << " p=" << p;
      EXPECT_EQ(got->witness, hits.front().value) << search.id << " p=" << p;
      EXPECT_EQ(got->unique, hits.size() == 1) << search.id << " p=" << p;
    }
  }
}

TEST(FindWitness, CapDiscipline) {
  PrimeSieve sieve(5000);
  WitnessFinder finder(sieve);
  for (u64 p : sieve.primes_in(5, 5000)) {
    if (auto r = finder.find("C2.1iii", p)) { ASSERT_LE(r->params[0], isqrt(p + 2) + 2); }
    if (auto r = finder.find("C3.3i", p)) { ASSERT_LT(2 * r->params[0], p); }
    if (auto r = finder.find("C3.1i", p)) { ASSERT_LT(r->params[0] * r->params[0] + 1, p); }
    if (p >= 7) {
      if (auto r = finder.find("C3.6ii", p)) { ASSERT_LE(2 * r->params[0], p - 1); }
    }
  }
}

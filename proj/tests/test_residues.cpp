#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prrlab/residues.hpp"
#include "prrlab/sequences.hpp"

using namespace prrlab;

namespace {

u64 least_nonresidue(u64 p) {
  u64 d = 2;
  while (legendre(static_cast<i64>(d), p) != -1) ++d;
  return d;
}

}  // namespace

TEST(SqrtDecomposition, Invariants) {
  for (u64 p : oracle::primes_upto(5000)) {
    if (p == 2) continue;
    auto d = SqrtDecomposition::of(p);
    ASSERT_GE(d.s, 1u);
    ASSERT_EQ(d.t % 2, 1u);
    ASSERT_EQ((u64{1} << d.s) * d.t, p - 1);
  }
  EXPECT_THROW(SqrtDecomposition::of(2), error);
}

TEST(TonelliShanks, Examples) {
  EXPECT_EQ(tonelli_shanks(1, 13, 2), 1u);
  EXPECT_EQ(tonelli_shanks(2, 7, 3), 3u);
  EXPECT_EQ(tonelli_shanks(4, 101, least_nonresidue(101)), 2u);
  EXPECT_THROW(tonelli_shanks(3, 7, 3), error);
  try {
    tonelli_shanks(2, 7, 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::bad_nonresidue);
  }
}

TEST(TonelliShanks, EveryResidueBelow2000) {
  for (u64 p : oracle::primes_upto(2000)) {
    if (p == 2) continue;
    const u64 d = least_nonresidue(p);
    for (u64 a : oracle::squares(p)) {
      u64 x = tonelli_shanks(a, p, d);
      ASSERT_EQ(mul_mod(x, x, p), a) << a << " mod " << p;
      ASSERT_LE(x, p - x);
    }
  }
}

TEST(LeastFibQnr, Examples) {
  auto w11 = least_fib_qnr(11);
  ASSERT_TRUE(w11);
  EXPECT_EQ(w11->value, 2u);
  EXPECT_EQ(w11->index, 3u);
  auto w7 = least_fib_qnr(7);
  ASSERT_TRUE(w7);
  EXPECT_EQ(w7->value, 3u);
  EXPECT_EQ(w7->index, 4u);
  EXPECT_TRUE(least_fib_qnr(5));
}

TEST(LeastFibQnr, WitnessInvariants) {
  auto fib = oracle::fibonacci(93);
  for (u64 p : oracle::primes_upto(20000)) {
    if (p < 5) continue;
    auto w = least_fib_qnr(p);
    ASSERT_TRUE(w) << p;
    ASSERT_EQ(mpz_class(w->value), fib[w->index]);
    ASSERT_EQ(legendre(static_cast<i64>(w->value), p), -1);
    ASSERT_LT(2 * w->value, p);
    for (u64 k = 2; k < w->index; ++k) ASSERT_NE(legendre(static_cast<i64>(fib[k].get_ui()), p), -1);
  }
}

TEST(LeastLucasQnr, Examples) {
  auto w = least_lucas_qnr(7);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->value, 3u);
  EXPECT_EQ(w->index, 2u);
}

TEST(LeastMersenneCubic, Examples) {
  auto w = least_mersenne_cubic_nr(4667629);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->index, 15u);
  EXPECT_EQ(w->value, 32767u);
  EXPECT_THROW(least_mersenne_cubic_nr(11), error);
}

TEST(LeastMersenneCubic, WitnessInvariants) {
  for (u64 p : oracle::primes_upto(20000)) {
    if (p % 3 != 1 || p < 7) continue;
    auto w = least_mersenne_cubic_nr(p);
    ASSERT_TRUE(w) << p;
    ASSERT_EQ(w->value, (u64{1} << w->index) - 1);
    ASSERT_FALSE(is_cubic_residue(static_cast<i64>(w->value), p));
  }
}

TEST(TwoPowPlusOneQnr, ExistsAbove5) {
  for (u64 p : oracle::primes_upto(100000)) {
    if (p <= 5) continue;
    auto w = exists_two_pow_plus_one_qnr(p);
    ASSERT_TRUE(w) << p;
    ASSERT_TRUE(oracle::is_prime(w->index));
    ASSERT_EQ(legendre(static_cast<i64>(add_mod(pow_mod(2, w->index, p), 1, p)), p), -1);
  }
}

TEST(DeterministicSqrt, Examples) {
  for (u64 p : {u64{7}, u64{11}, u64{101}, u64{1000003}}) EXPECT_EQ(deterministic_sqrt(4, p).root, 2u);
  auto r = deterministic_sqrt(2, 7);
  EXPECT_EQ(r.root, 3u);
  EXPECT_EQ(r.nonresidue, 3u);
  EXPECT_TRUE(r.fibonacci_path);
  EXPECT_EQ(deterministic_sqrt(-3, 7).root, 2u);
  EXPECT_THROW(deterministic_sqrt(3, 7), error);
}

TEST(LeastFibNegOne, Examples) {
  EXPECT_EQ(least_fib_neg_one(2), 1u);
  EXPECT_EQ(least_fib_neg_one(3), 3u);
  EXPECT_EQ(least_fib_neg_one(7), 7u);
  EXPECT_THROW(least_fib_neg_one(1), error);
}

TEST(LeastFibNegOne, WithinSquareBound) {
  for (u64 n = 2; n <= 2000; ++n) {
    u64 k = least_fib_neg_one(n);
    ASSERT_LE(k, n * n);
    ASSERT_EQ(fib_pair_mod(k, n).first, n - 1) << n;
    for (u64 j = 1; j < k && j < 200; ++j) ASSERT_NE(fib_pair_mod(j, n).first, n - 1);
  }
}

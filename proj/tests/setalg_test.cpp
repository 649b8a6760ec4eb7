#include <gtest/gtest.h>

#include <random>

#include "bousfield/errors.hpp"
#include "bousfield/setalg/expr.hpp"
#include "random_sets.hpp"

using namespace bousfield;
using namespace bousfield::setalg;

namespace {

const PrimeUniverse kUniverse{};

NSet S(const std::string& text) { return evaluate_set(text, kUniverse); }

// Independent oracle: every prime power p^(kq) <= bound over the primes <= p_max.
std::vector<Nat> brute_antichain_members(Nat q, Nat bound, Nat p_max) {
  std::vector<Nat> out;
  for (Nat p : primes_upto(p_max))
    for (Nat k = q;; k += q) {
      auto v = checked_pow(p, k);
      if (!v || *v > bound) break;
      out.push_back(*v);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(PeriodicSet, CanonicalPeriodIsMinimal) {
  auto evens = PeriodicSet::progression(2, 2);
  auto also_evens = PeriodicSet::progression(2, 4) | PeriodicSet::progression(4, 4);
  EXPECT_EQ(evens, also_evens);
  EXPECT_EQ(also_evens.period(), 2u);
  EXPECT_TRUE(also_evens.exceptions().empty());
}

TEST(PeriodicSet, ProgressionStartsAtFirstTerm) {
  auto s = PeriodicSet::progression(7, 3);
  EXPECT_EQ(s.members_upto(16), (std::vector<Nat>{7, 10, 13, 16}));
  EXPECT_EQ(s.threshold(), 5u);  // 1 and 4 are overridden
}

TEST(ExponentTrace, PowersOfTwoAreEven) {
  EXPECT_EQ(exponent_trace(2, PeriodicSet::progression(2, 2)), PeriodicSet::naturals());
}

TEST(ExponentTrace, PowersOfThreeAreOdd) {
  EXPECT_TRUE(exponent_trace(3, PeriodicSet::progression(2, 2)).is_empty());
}

TEST(ExponentTrace, TwoModThreeCycles) {
  // 2^k mod 3 = 2, 1, 2, 1, ...: lands in 1 mod 3 exactly for even k.
  EXPECT_EQ(exponent_trace(2, PeriodicSet::progression(1, 3)), PeriodicSet::progression(2, 2));
}

TEST(ExponentTrace, RespectsExceptions) {
  auto s = PeriodicSet::progression(2, 2) - PeriodicSet::finite({8, 32});
  auto t = exponent_trace(2, s);
  EXPECT_EQ(t, PeriodicSet::naturals() - PeriodicSet::finite({3, 5}));
}

TEST(NSetOps, DistinctPrimeFamiliesAreDisjoint) {
  EXPECT_TRUE((S("pow(2)") & S("pow(3)")).is_empty());
}

TEST(NSetOps, ComplementOfEvensIsOdds) { EXPECT_EQ(S("~ap(2,2)"), S("ap(1,2)")); }

TEST(NSetOps, AntichainSetMeetsFamily) {
  EXPECT_EQ(S("Sq(2) & pow(2)"), S("pow(2, ap(2,2))"));
}

TEST(NSetOps, FiniteExponentsBecomeCoreExceptions) {
  NSet s = S("pow(2, fin{1,3})");
  EXPECT_TRUE(s.active_primes().empty());
  EXPECT_EQ(s, S("fin{2,8}"));
}

TEST(NSetOps, CanonicalFormIgnoresHowASetWasBuilt) {
  EXPECT_EQ(S("pow(2) | fin{2}"), S("pow(2)"));
  EXPECT_EQ(S("(ap(2,2) \\ pow(2)) | pow(2)"), S("ap(2,2)"));
  EXPECT_EQ(S("ap(1,2) | pow(2)"), S("~(ap(2,2) \\ pow(2))"));
}

TEST(Finiteness, PrimePowersAreInfinite) { EXPECT_FALSE(S("pow(2)").is_finite()); }

TEST(Finiteness, EvensMinusPowersOfTwoStayInfinite) {
  NSet s = S("ap(2,2) \\ pow(2)");
  EXPECT_FALSE(s.is_finite());
  // Enumeration: 5000 evens up to 10^4, of which 13 are powers of two.
  EXPECT_EQ(enumerate_upto(s, 10000).size(), 5000u - 13u);
}

TEST(Finiteness, FiniteSetCardinality) {
  NSet s = S("fin{1,3,5}");
  EXPECT_TRUE(s.is_finite());
  EXPECT_EQ(s.cardinality(), 3u);
}

TEST(OrderPredicates, Examples) {
  EXPECT_TRUE(commensurable(S("pow(2)"), S("pow(2) | fin{5,9}")));
  EXPECT_TRUE(lesssim(S("pow(2)"), S("pow(2) | pow(3)")));
  EXPECT_FALSE(lesssim(S("pow(2) | pow(3)"), S("pow(2)")));
  NSet s2 = S("Sq(2)"), s3 = S("Sq(3)");
  EXPECT_FALSE(commensurable(s2, s3));
  EXPECT_FALSE(lesssim(s2, s3));
  EXPECT_FALSE(lesssim(s3, s2));
  EXPECT_TRUE(cofinite_in(S("ap(2,2) \\ fin{2,4}"), S("ap(2,2)")));
  EXPECT_FALSE(cofinite_in(S("ap(4,4)"), S("ap(2,2)")));
  EXPECT_TRUE(subset(S("ap(4,4)"), S("ap(2,2)")));
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_upto(S("pow(3)"), 100), (std::vector<Nat>{3, 9, 27, 81}));
  EXPECT_EQ(enumerate_upto(S("ap(1,4)"), 10), (std::vector<Nat>{1, 5, 9}));
  std::vector<Nat> frozen{4, 9, 16, 25, 49, 64, 81};
  EXPECT_EQ(brute_antichain_members(2, 100, 97), frozen);
  EXPECT_EQ(enumerate_upto(S("Sq(2)"), 100), frozen);
}

TEST(Enumerate, SparseMembersBeyond64Bits) {
  auto members = enumerate_members(S("pow(2) | pow(3)"), 150);
  ASSERT_EQ(members.size(), 150u);
  EXPECT_EQ(members[0], (PowerTerm{2, 1}));
  EXPECT_EQ(members[1], (PowerTerm{3, 1}));
}

TEST(Errors, RejectsBadPrimes) {
  EXPECT_THROW(S("pow(4)"), PreconditionError);
  EXPECT_THROW(S("pow(101)"), PreconditionError);
  EXPECT_THROW(S("pow(2, pow(3))"), PreconditionError);
  EXPECT_THROW(S("ap(0,2)"), ParseError);
  EXPECT_THROW(S("fin{1,2"), ParseError);
  EXPECT_THROW(S("N N"), ParseError);
}

// ---------------------------------------------------------------------------
// Properties over random expression trees.

TEST(Properties, CanonicalFormMatchesDirectInterpretation) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::string text = testgen::random_set_text(rng, 4);
    auto expr = parse_set(text);
    NSet s = evaluate(*expr, kUniverse);
    auto listed = enumerate_upto(s, 10000);
    std::vector<Nat> direct;
    for (Nat n = 1; n <= 10000; ++n)
      if (expr_contains(*expr, n, kUniverse)) direct.push_back(n);
    ASSERT_EQ(listed, direct) << text;
  }
}

TEST(Properties, BooleanAlgebraLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    NSet a = testgen::random_nset(rng, 3), b = testgen::random_nset(rng, 3),
         c = testgen::random_nset(rng, 3);
    EXPECT_EQ(a | b, b | a);
    EXPECT_EQ(a & b, b & a);
    EXPECT_EQ((a | b) | c, a | (b | c));
    EXPECT_EQ((a & b) & c, a & (b & c));
    EXPECT_EQ(a & (b | c), (a & b) | (a & c));
    EXPECT_EQ(a | (b & c), (a | b) & (a | c));
    EXPECT_EQ(~(a | b), ~a & ~b);
    EXPECT_EQ(~(a & b), ~a | ~b);
    EXPECT_EQ(~~a, a);
    EXPECT_EQ(enumerate_upto(~(a | b), 10000), enumerate_upto(~a & ~b, 10000));
  }
}

TEST(Properties, PreorderAndEquivalence) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    NSet a = testgen::random_nset(rng, 3), b = testgen::random_nset(rng, 3),
         c = testgen::random_nset(rng, 3);
    EXPECT_TRUE(lesssim(a, a));
    EXPECT_TRUE(commensurable(a, a));
    if (lesssim(a, b) && lesssim(b, c)) {
      EXPECT_TRUE(lesssim(a, c));
    }
    EXPECT_EQ(commensurable(a, b), commensurable(b, a));
    EXPECT_EQ(commensurable(a, b), lesssim(a, b) && lesssim(b, a));
    if (commensurable(a, b) && commensurable(b, c)) {
      EXPECT_TRUE(commensurable(a, c));
    }
  }
}

TEST(Properties, FinitenessAgreesWithEnumeration) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    NSet s = testgen::random_nset(rng, 4);
    if (s.is_finite()) {
      Nat top = s.is_empty() ? 1 : s.core().exceptions().back();
      EXPECT_EQ(enumerate_upto(s, top).size(), *s.cardinality());
    } else {
      EXPECT_EQ(enumerate_members(s, 100).size(), 100u);
    }
  }
}

TEST(Properties, RemovingSparseFamiliesKeepsPeriodicSetsInfinite) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    NSet core = NSet::progression(std::uniform_int_distribution<Nat>(1, 9)(rng),
                                  std::uniform_int_distribution<Nat>(1, 9)(rng));
    NSet s = core - S("pow(2) | pow(3) | pow(5) | pow(7)");
    EXPECT_FALSE(s.is_finite());
    EXPECT_EQ(enumerate_members(s, 100).size(), 100u);
  }
}

TEST(Properties, PrintedFormReparsesToSameSet) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    NSet s = testgen::random_nset(rng, 4);
    EXPECT_EQ(S(to_expression(s)), s) << to_expression(s);
  }
}

TEST(Properties, FinitenessShortcutMatchesCombination) {
  std::mt19937_64 rng(29);
  const BoolFn fns[] = {ops::unite, ops::intersect, ops::difference, ops::symmetric};
  for (int trial = 0; trial < 150; ++trial) {
    NSet a = testgen::random_nset(rng, 3), b = testgen::random_nset(rng, 3);
    for (BoolFn fn : fns) EXPECT_EQ(a.combination_is_finite(b, fn), a.combine(b, fn).is_finite());
  }
}

TEST(Properties, PrimePowerUnionMatchesRepeatedUnion) {
  std::vector<Nat> primes{2, 3, 5, 7, 11};
  for (Nat q = 1; q <= 4; ++q) {
    NSet slow;
    for (Nat p : primes) slow = slow | NSet::prime_powers(p, PeriodicSet::progression(q, q));
    EXPECT_EQ(antichain_set(q, primes), slow);
  }
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bousfield/setalg/nset.hpp"

namespace bousfield::classalg {

using setalg::Nat;
using setalg::NSet;

/// A partition N = A | B | C into pairwise disjoint parts.
class Partition3 {
 public:
  /// Throws PreconditionError unless the parts are disjoint and cover N.
  Partition3(NSet a, NSet b, NSet c);

  const NSet& a() const { return a_; }
  const NSet& b() const { return b_; }
  const NSet& c() const { return c_; }

  bool operator==(const Partition3&) const = default;

 private:
  struct Unchecked {};
  Partition3(Unchecked, NSet a, NSet b, NSet c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
  friend class GenClass;

  NSet a_, b_, c_;
};

struct TensorCells;
class SumClass;

/// Bousfield class of N(A,B,C) = M(A) (x) k(B) (x) I(C). Never zero.
class GenClass {
 public:
  explicit GenClass(Partition3 parts) : parts_(std::move(parts)) {}

  /// M(S) = N(S, S^c, empty).
  static GenClass M(const NSet& s);
  /// I(S) = N(empty, S^c, S).
  static GenClass I(const NSet& s);
  /// k = N(empty, N, empty).
  static GenClass residue_field();
  /// Lambda = N(N, empty, empty), the unit.
  static GenClass sphere();

  const NSet& a() const { return parts_.a(); }
  const NSet& b() const { return parts_.b(); }
  const NSet& c() const { return parts_.c(); }
  const Partition3& parts() const { return parts_; }

  /// N(C, B, A): the test object that separates this class from anything
  /// not above it.
  GenClass reversed() const;

  bool operator==(const GenClass&) const = default;

 private:
  static GenClass unchecked(NSet a, NSet b, NSet c) {
    return GenClass(Partition3(Partition3::Unchecked{}, std::move(a), std::move(b), std::move(c)));
  }
  friend SumClass tensor(const GenClass&, const GenClass&);

  Partition3 parts_;
};

/// Finite direct sum; its class is the join of the summand classes. The
/// empty sum is the zero class.
class SumClass {
 public:
  SumClass() = default;
  SumClass(GenClass g) : summands_{std::move(g)} {}  // NOLINT: a generator is a one-term sum
  explicit SumClass(std::vector<GenClass> summands) : summands_(std::move(summands)) {}

  static SumClass zero() { return SumClass(); }

  bool is_zero() const { return summands_.empty(); }
  const std::vector<GenClass>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }

  /// Direct sum.
  SumClass operator+(const SumClass& other) const;

 private:
  std::vector<GenClass> summands_;
};

/// The nine-way decomposition of N(A,B,C) (x) N(S,T,U), read per variable.
///
///   a = (A & S) | (C & U)                         M (x) M, finite I (x) I
///   b = (A & T) | (B & S) | (B & T) | (B & U) | (C & T)
///   c = (A & U) | (C & S)                         M (x) I
///   killing = (C & T) | (C & U) | (B & U)
///
/// The product vanishes exactly when `killing` is infinite; otherwise the
/// killing part is finite and folds into a and b without changing the class.
struct TensorCells {
  NSet a, b, c, killing;
};
TensorCells tensor_cells(const GenClass& x, const GenClass& y);

bool tensor_is_zero(const GenClass& x, const GenClass& y);
/// Zero iff every pair of summands has a zero product.
bool tensor_is_zero(const SumClass& x, const SumClass& y);

/// Zero or the single generator N(a, b, c) from tensor_cells.
SumClass tensor(const GenClass& x, const GenClass& y);
/// Distributes over the sums, drops zero products and repeats of equal classes.
SumClass tensor(const SumClass& x, const SumClass& y);

/// <X> <= <Y>: A <~ A' and C' <~ C. Every object killing Y kills X exactly
/// in this case; otherwise N(C, B, A) kills Y but not X.
bool leq(const GenClass& x, const GenClass& y);
/// The left lexicographic commensurability rule
///   (A <~ A' and A !~ A')  or  (A ~ A' and B <~ B').
/// Agrees with leq except when A <~ A' strictly and B & C' is infinite, where
/// it reports <= although N(C, B, A) separates the classes.
bool lexicographic_leq(const GenClass& x, const GenClass& y);
bool eq(const GenClass& x, const GenClass& y);
bool comparable(const GenClass& x, const GenClass& y);
bool strictly_less(const GenClass& x, const GenClass& y);

/// Sums compared up to class equality of summands, as sets.
bool same_summand_classes(const SumClass& x, const SumClass& y);
/// Removes summands whose class equals an earlier summand's.
SumClass dedupe(const SumClass& x);

enum class Side { Left, Right };

/// A test object W with W (x) kills-side = 0 and W (x) survives-side != 0.
/// `survivor` indexes the summand on the surviving side with a nonzero
/// product.
struct Witness {
  GenClass object;
  Side kills;
  Side survives;
  std::size_t survivor = 0;
};

/// Re-checks a witness against the two sides it refers to.
bool verify(const Witness& w, const SumClass& left, const SumClass& right);

/// A witness that <X> is not <= <Y>: kills Y, survives X. Searches the
/// generator family N(C', B', A') built from the atoms of the parts of X and
/// Y; the candidate N(C_i, B_i, A_i) for a summand X_i dominates every other
/// member of that family, so trying those candidates settles the search.
/// nullopt means not separated by generator witnesses, which is exact when
/// both sides are single generators.
std::optional<Witness> separating_witness(const SumClass& x, const SumClass& y);

enum class Verdict { True, False, Unknown };

struct JoinComparison {
  Verdict verdict;
  std::optional<Witness> witness;  // set when verdict is False
  std::string caveat;              // set when verdict is Unknown
};

/// <X> <= <Y> for sums. True when every summand of X lies below some
/// summand of Y, False with a witness when one exists, Unknown otherwise.
JoinComparison join_leq(const SumClass& x, const SumClass& y);

/// Pair (i, j), i < j, of an antichain with one witness per direction.
struct IncomparabilityCertificate {
  std::size_t i, j;
  Witness i_not_below_j;  // left = member i, right = member j
  Witness j_not_below_i;  // left = member j, right = member i
};

struct Antichain {
  std::vector<Nat> indices;  // the primes q with S_q in the family
  std::vector<NSet> sets;
  std::vector<GenClass> classes;  // M(S_q)
  std::vector<IncomparabilityCertificate> certificates;
};

/// First n sets S_q = U_{p tracked} {p^(kq)}, q running over the first n
/// tracked primes, with every pair certified incomparable. Throws
/// PreconditionError when n exceeds the number of tracked primes and
/// VerificationError if a certificate fails.
Antichain antichain(std::size_t n, const std::vector<Nat>& tracked_primes);

/// Both S & P_p and S^c & P_p are infinite.
bool splits_prime_family(const NSet& s, Nat p);

/// Certifies M(s) and M(t) incomparable, or returns nullopt.
std::optional<IncomparabilityCertificate> certify_incomparable(const GenClass& x, const GenClass& y);

/// The diagonal T = U_p (P_p \ S_p), family member i indexed by the i-th
/// tracked prime and P_p kept whole for primes past the family. Throws
/// PreconditionError when some member fails to split some tracked P_p or the
/// family is longer than the tracked primes.
NSet antichain_extend(const std::vector<NSet>& family, const std::vector<Nat>& tracked_primes);

struct IntervalAntichain {
  std::vector<NSet> sets;
  std::vector<GenClass> classes;
  std::vector<IncomparabilityCertificate> certificates;
};

/// n pairwise incomparable classes M(T | P_p) strictly between M(T) and
/// M(U), for the first n tracked primes with P_p inside U \ T.
IntervalAntichain interval_antichain(const NSet& t, const NSet& u, std::size_t n,
                                     const std::vector<Nat>& tracked_primes);

/// n-fold tensor power; the 0-th power is Lambda.
SumClass tensor_power(const SumClass& x, std::size_t n);

/// Greatest n with X^(n) != 0; 0 for the zero object, nullopt for infinite
/// height (the sequence of powers revisits a class pattern while nonzero).
std::optional<std::size_t> nilpotence_height(const SumClass& x);

/// N(P_p^c, empty, P_p) summed over `primes`.
SumClass prime_family_sum(const std::vector<Nat>& primes);

struct DescendingChainStep {
  std::size_t m;
  SumClass power;     // Y^(m)
  SumClass previous;  // Y^(m-1), with Y^(0) = Lambda
  NSet tail;          // U = P_{p(m)} | ... | P_{p(last)}
  GenClass witness;   // M(U^c)
  bool kills_power;
  bool survives_previous;
};

/// Y = sum over `primes` of I(P_p) (x) M(P_p^c). Throws PreconditionError
/// when m is 0 or exceeds primes.size().
DescendingChainStep descending_chain_class(std::size_t m, const std::vector<Nat>& primes);

/// For two sub-families of one pairwise incomparable family, a witness
/// I(S_a) with a in their symmetric difference; nullopt when they agree.
/// The witness kills the side missing a and survives the side containing it.
std::optional<Witness> distinguish_sums(const std::vector<GenClass>& left,
                                        const std::vector<GenClass>& right);

struct MinimalityReport {
  bool above_minimum;  // <I(N)> <= <X>
  bool below_minimum;  // <X> <= <I(N)>
  bool equals_minimum;
};
MinimalityReport minimal_check(const GenClass& x);

/// For nonzero X, Y with X (x) Y = 0: the object I(N) kills X (+) Y and
/// survives Lambda, so <X (+) Y> != <Lambda>. nullopt if X (x) Y != 0.
std::optional<Witness> complement_obstruction(const GenClass& x, const GenClass& y);

}  // namespace bousfield::classalg

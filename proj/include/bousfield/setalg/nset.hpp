#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bousfield/setalg/periodic_set.hpp"

namespace bousfield::setalg {

/// A subset of N = {1, 2, 3, ...} from the closed class
///
///   S = (core \ U_p p^removed[p]) U U_p p^added[p]
///
/// where `core` is ultimately periodic and each `added[p]`, `removed[p]` is an
/// ultimately periodic set of exponents k >= 1 for a prime p. This class
/// contains every finite set, every arithmetic progression, the prime-power
/// families P_p and the unions S_q = U_p {p^(kq)}, and is closed under the
/// boolean operations.
///
/// Canonical form. A prime p is *active* when S and the core's eventual
/// pattern disagree at infinitely many powers of p. At powers of active
/// primes the core follows its pattern exactly and the disagreement is
/// recorded in `added`/`removed`; everywhere else finite disagreements are
/// core exceptions. The pattern is unique (an infinite ultimately periodic
/// set cannot sit inside finitely many prime-power families), so the whole
/// form is unique and equality is structural.
class NSet {
 public:
  NSet() = default;  // empty

  static NSet empty() { return NSet(); }
  static NSet naturals();
  static NSet finite(std::vector<Nat> members);
  static NSet progression(Nat a, Nat d);
  static NSet from_periodic(PeriodicSet core);
  /// {p^k : k in exponents}; p must be prime.
  static NSet prime_powers(Nat p, const PeriodicSet& exponents);
  /// U_p {p^k : k in families[p]}, built in one pass.
  static NSet prime_power_union(const std::map<Nat, PeriodicSet>& families);
  /// P_p = {p^k : k >= 1}.
  static NSet prime_powers(Nat p) { return prime_powers(p, PeriodicSet::naturals()); }

  bool contains(Nat n) const;

  NSet combine(const NSet& other, BoolFn fn) const;
  NSet complement() const;
  /// Whether combine(other, fn) is finite, without building it.
  bool combination_is_finite(const NSet& other, BoolFn fn) const;
  NSet operator|(const NSet& o) const { return combine(o, ops::unite); }
  NSet operator&(const NSet& o) const { return combine(o, ops::intersect); }
  NSet operator-(const NSet& o) const { return combine(o, ops::difference); }
  NSet operator^(const NSet& o) const { return combine(o, ops::symmetric); }
  NSet operator~() const { return complement(); }

  bool is_finite() const;
  bool is_empty() const;
  std::optional<Nat> cardinality() const;

  /// {k >= 1 : p^k in S}.
  PeriodicSet exponents_of(Nat p) const;

  /// The set is ultimately periodic (no active primes); returns the core.
  std::optional<PeriodicSet> as_periodic() const;

  const PeriodicSet& core() const { return core_; }
  const std::map<Nat, PeriodicSet>& added() const { return added_; }
  const std::map<Nat, PeriodicSet>& removed() const { return removed_; }
  std::vector<Nat> active_primes() const;

  bool operator==(const NSet&) const = default;

 private:
  template <class Member>
  static NSet assemble(const PeriodicSet& pattern, const std::map<Nat, PeriodicSet>& prime_traces,
                       std::vector<Nat> candidates, Member&& member);
  std::optional<Nat> active_base(Nat n) const;

  PeriodicSet core_;
  std::map<Nat, PeriodicSet> added_;
  std::map<Nat, PeriodicSet> removed_;
};

// Order predicates. All reduce to finiteness of a boolean combination.
bool lesssim(const NSet& s, const NSet& t);        // S \ T finite
bool commensurable(const NSet& s, const NSet& t);  // S ^ T finite
bool cofinite_in(const NSet& t, const NSet& s);    // T subset of S with S \ T finite
bool subset(const NSet& s, const NSet& t);
bool equal(const NSet& s, const NSet& t);

/// Sorted members <= bound, evaluated point by point from the defining
/// formula of the set.
std::vector<Nat> enumerate_upto(const NSet& s, Nat bound);

/// A member written as base^exponent, so that very large prime powers can be
/// listed without overflow.
struct PowerTerm {
  Nat base;
  Nat exponent;
  bool operator==(const PowerTerm&) const = default;
};

/// Up to `count` members, using the representation to reach sparse members
/// directly. Dense parts are listed in increasing order, sparse families by
/// increasing exponent.
std::vector<PowerTerm> enumerate_members(const NSet& s, std::size_t count);

/// The union over `primes` of {p^(kq) : k >= 1}.
NSet antichain_set(Nat q, const std::vector<Nat>& primes);

}  // namespace bousfield::setalg

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bousfield::setalg {

using Nat = std::uint64_t;

/// Binary boolean connective applied pointwise to membership.
using BoolFn = bool (*)(bool, bool);

namespace ops {
inline bool unite(bool a, bool b) { return a || b; }
inline bool intersect(bool a, bool b) { return a && b; }
inline bool difference(bool a, bool b) { return a && !b; }
inline bool symmetric(bool a, bool b) { return a != b; }
inline bool negate_left(bool a, bool) { return !a; }
}  // namespace ops

/// Largest period a PeriodicSet may carry; lcm blow-ups past this throw RangeError.
inline constexpr Nat kMaxPeriod = Nat{1} << 22;

/// An ultimately periodic subset of the positive integers.
///
/// Membership of n >= 1 is `pattern[n mod period]`, flipped at the finitely
/// many positions listed in `exceptions`. The stored form is canonical: the
/// period is the least period of the eventual pattern and `exceptions` holds
/// exactly the positions where the set disagrees with that pattern, so two
/// PeriodicSets denote the same set iff they compare equal.
///
/// In the threshold/override vocabulary, `threshold()` is one past the
/// largest exception and the overrides are the exception positions.
class PeriodicSet {
 public:
  PeriodicSet();  // empty set

  static PeriodicSet empty();
  static PeriodicSet naturals();
  static PeriodicSet finite(std::vector<Nat> members);
  /// {a, a+d, a+2d, ...}; requires a >= 1, d >= 1.
  static PeriodicSet progression(Nat a, Nat d);
  /// Builds a canonical set from an arbitrary (period, pattern) plus a list
  /// of candidate exception positions; `member` gives the true membership at
  /// every candidate.
  template <class Member>
  static PeriodicSet assemble(Nat period, std::vector<char> pattern,
                              std::vector<Nat> candidates, Member&& member);

  bool contains(Nat n) const;
  /// Membership ignoring exceptions.
  bool pattern_contains(Nat n) const { return pattern_[n % period_] != 0; }

  bool is_finite() const;
  bool is_empty() const { return is_finite() && exceptions_.empty(); }
  std::optional<Nat> cardinality() const;

  Nat period() const { return period_; }
  const std::vector<char>& pattern() const { return pattern_; }
  const std::vector<Nat>& exceptions() const { return exceptions_; }
  Nat threshold() const { return exceptions_.empty() ? 0 : exceptions_.back() + 1; }

  /// The eventual pattern alone, with no exceptions.
  PeriodicSet pattern_only() const;

  PeriodicSet combine(const PeriodicSet& other, BoolFn fn) const;
  PeriodicSet complement() const;

  PeriodicSet operator|(const PeriodicSet& o) const { return combine(o, ops::unite); }
  PeriodicSet operator&(const PeriodicSet& o) const { return combine(o, ops::intersect); }
  PeriodicSet operator-(const PeriodicSet& o) const { return combine(o, ops::difference); }
  PeriodicSet operator^(const PeriodicSet& o) const { return combine(o, ops::symmetric); }

  bool operator==(const PeriodicSet&) const = default;

  /// Sorted members <= bound.
  std::vector<Nat> members_upto(Nat bound) const;

 private:
  void canonicalize();

  Nat period_ = 1;
  std::vector<char> pattern_;
  std::vector<Nat> exceptions_;
};

/// {k >= 1 : p^k in set}. Ultimately periodic because k -> p^k mod period
/// is eventually periodic.
PeriodicSet exponent_trace(Nat p, const PeriodicSet& set);

/// p^k, or nullopt on 64-bit overflow.
std::optional<Nat> checked_pow(Nat p, Nat k);

bool is_prime(Nat n);
/// All primes <= bound, ascending.
std::vector<Nat> primes_upto(Nat bound);
/// First `count` primes.
std::vector<Nat> first_primes(std::size_t count);

template <class Member>
PeriodicSet PeriodicSet::assemble(Nat period, std::vector<char> pattern,
                                  std::vector<Nat> candidates, Member&& member) {
  PeriodicSet s;
  s.period_ = period;
  s.pattern_ = std::move(pattern);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (Nat n : candidates) {
    if (n == 0) continue;
    if (static_cast<bool>(member(n)) != s.pattern_contains(n)) s.exceptions_.push_back(n);
  }
  s.canonicalize();
  return s;
}

}  // namespace bousfield::setalg

#include "bousfield/setalg/nset.hpp"

#include <cmath>
#include <numeric>
#include <queue>

#include "bousfield/errors.hpp"

namespace bousfield::setalg {

namespace {

// Semantic exponent trace of a set given by core plus sparse corrections.
PeriodicSet full_trace(Nat p, const PeriodicSet& core, const std::map<Nat, PeriodicSet>& added,
                       const std::map<Nat, PeriodicSet>& removed) {
  PeriodicSet t = exponent_trace(p, core);
  if (auto it = removed.find(p); it != removed.end()) t = t - it->second;
  if (auto it = added.find(p); it != added.end()) t = t | it->second;
  return t;
}

}  // namespace

template <class Member>
NSet NSet::assemble(const PeriodicSet& pattern, const std::map<Nat, PeriodicSet>& prime_traces,
                    std::vector<Nat> candidates, Member&& member) {
  NSet out;
  for (const auto& [p, trace] : prime_traces) {
    PeriodicSet expected = exponent_trace(p, pattern);
    PeriodicSet disagreement = trace ^ expected;
    if (!disagreement.is_finite()) {
      PeriodicSet add = trace - expected;
      PeriodicSet rem = expected - trace;
      if (!add.is_empty()) out.added_.emplace(p, std::move(add));
      if (!rem.is_empty()) out.removed_.emplace(p, std::move(rem));
      continue;
    }
    for (Nat k : disagreement.exceptions()) {
      auto v = checked_pow(p, k);
      if (!v) throw RangeError("prime power " + std::to_string(p) + "^" + std::to_string(k) +
                               " exceeds 64 bits");
      candidates.push_back(*v);
    }
  }
  std::erase_if(candidates, [&](Nat n) { return out.active_base(n).has_value(); });
  out.core_ = PeriodicSet::assemble(pattern.period(), pattern.pattern(), std::move(candidates),
                                    std::forward<Member>(member));
  return out;
}

NSet NSet::naturals() { return from_periodic(PeriodicSet::naturals()); }

NSet NSet::finite(std::vector<Nat> members) { return from_periodic(PeriodicSet::finite(std::move(members))); }

NSet NSet::progression(Nat a, Nat d) { return from_periodic(PeriodicSet::progression(a, d)); }

NSet NSet::from_periodic(PeriodicSet core) {
  NSet s;
  s.core_ = std::move(core);
  return s;
}

NSet NSet::prime_powers(Nat p, const PeriodicSet& exponents) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  std::map<Nat, PeriodicSet> traces{{p, exponents}};
  auto member = [&](Nat n) {
    Nat k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    return n == 1 && k >= 1 && exponents.contains(k);
  };
  return assemble(PeriodicSet::empty(), traces, {}, member);
}

NSet NSet::prime_power_union(const std::map<Nat, PeriodicSet>& families) {
  for (const auto& [p, e] : families)
    if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  auto member = [&](Nat n) {
    for (const auto& [p, e] : families) {
      if (n % p) continue;
      Nat k = 0;
      for (; n % p == 0; n /= p) ++k;
      return n == 1 && e.contains(k);
    }
    return false;
  };
  return assemble(PeriodicSet::empty(), families, {}, member);
}

std::optional<Nat> NSet::active_base(Nat n) const {
  if (n < 2) return std::nullopt;
  auto check = [&](Nat p) -> bool {
    if (n % p != 0) return false;
    Nat m = n;
    while (m % p == 0) m /= p;
    return m == 1;
  };
  for (const auto& [p, _] : added_)
    if (check(p)) return p;
  for (const auto& [p, _] : removed_)
    if (check(p)) return p;
  return std::nullopt;
}

bool NSet::contains(Nat n) const {
  if (n == 0) return false;
  bool in = core_.contains(n);
  if (auto p = active_base(n)) {
    Nat k = 0;
    for (Nat m = n; m % *p == 0; m /= *p) ++k;
    if (auto it = removed_.find(*p); it != removed_.end() && it->second.contains(k)) in = false;
    if (auto it = added_.find(*p); it != added_.end() && it->second.contains(k)) in = true;
  }
  return in;
}

NSet NSet::combine(const NSet& other, BoolFn fn) const {
  PeriodicSet pattern = core_.pattern_only().combine(other.core_.pattern_only(), fn);

  std::map<Nat, PeriodicSet> traces;
  auto primes = active_primes();
  for (Nat p : other.active_primes()) primes.push_back(p);
  for (Nat p : primes) {
    if (traces.count(p)) continue;
    traces.emplace(p, full_trace(p, core_, added_, removed_)
                          .combine(full_trace(p, other.core_, other.added_, other.removed_), fn));
  }

  std::vector<Nat> candidates = core_.exceptions();
  candidates.insert(candidates.end(), other.core_.exceptions().begin(), other.core_.exceptions().end());
  return assemble(pattern, traces, std::move(candidates),
                  [&](Nat n) { return fn(contains(n), other.contains(n)); });
}

bool NSet::combination_is_finite(const NSet& other, BoolFn fn) const {
  // Exceptions are finite, so only the patterns and the active families
  // can contribute infinitely many members.
  PeriodicSet pattern = core_.pattern_only().combine(other.core_.pattern_only(), fn);
  if (!pattern.is_empty()) return false;
  static const PeriodicSet none;
  auto lookup = [](const std::map<Nat, PeriodicSet>& m, Nat p) -> const PeriodicSet& {
    auto it = m.find(p);
    return it == m.end() ? none : it->second;
  };
  auto primes = active_primes();
  for (Nat p : other.active_primes()) primes.push_back(p);
  for (Nat p : primes) {
    // Eventual membership of p^k is added(k) or (trace(k) and not removed(k));
    // past every threshold each side repeats with its own period.
    const PeriodicSet ts = exponent_trace(p, core_.pattern_only()), tt = exponent_trace(p, other.core_.pattern_only());
    const PeriodicSet* sides[2][3] = {{&ts, &lookup(added_, p), &lookup(removed_, p)},
                                      {&tt, &lookup(other.added_, p), &lookup(other.removed_, p)}};
    Nat start = 1, span[2] = {1, 1};
    for (int i = 0; i < 2; ++i)
      for (const PeriodicSet* e : sides[i]) {
        start = std::max(start, e->threshold());
        span[i] = std::lcm(span[i], e->period());
      }
    if (std::lcm(span[0], span[1]) > (Nat(1) << 20)) {
      if (!full_trace(p, core_.pattern_only(), added_, removed_)
               .combine(full_trace(p, other.core_.pattern_only(), other.added_, other.removed_), fn)
               .is_finite())
        return false;
      continue;
    }
    std::vector<char> bits[2];
    bool any[2] = {false, false}, all[2] = {true, true};
    for (int i = 0; i < 2; ++i) {
      bits[i].resize(span[i]);
      for (Nat j = 0; j < span[i]; ++j) {
        Nat k = start + j;
        bool in = sides[i][1]->contains(k) || (sides[i][0]->contains(k) && !sides[i][2]->contains(k));
        bits[i][j] = in;
        any[i] |= in;
        all[i] &= in;
      }
    }
    // A constant side reduces the question to the other side's values.
    auto reachable = [&](int i, bool v) { return v ? any[i] : !all[i]; };
    bool hit = false;
    if (!any[0] || all[0] || !any[1] || all[1]) {
      for (bool a : {false, true})
        for (bool b : {false, true})
          hit |= reachable(0, a) && reachable(1, b) && fn(a, b) &&
                 // Values on two non-constant sides need not co-occur.
                 ((!any[0] || all[0]) || (!any[1] || all[1]));
    } else {
      const Nat joint = std::lcm(span[0], span[1]);
      for (Nat j = 0; j < joint && !hit; ++j) hit = fn(bits[0][j % span[0]], bits[1][j % span[1]]);
    }
    if (hit) return false;
  }
  return true;
}

NSet NSet::complement() const { return combine(NSet(), ops::negate_left); }

bool NSet::is_finite() const { return core_.is_finite() && added_.empty(); }

bool NSet::is_empty() const { return is_finite() && core_.exceptions().empty(); }

std::optional<Nat> NSet::cardinality() const {
  if (!is_finite()) return std::nullopt;
  return core_.exceptions().size();
}

PeriodicSet NSet::exponents_of(Nat p) const { return full_trace(p, core_, added_, removed_); }

std::optional<PeriodicSet> NSet::as_periodic() const {
  if (!added_.empty() || !removed_.empty()) return std::nullopt;
  return core_;
}

std::vector<Nat> NSet::active_primes() const {
  std::vector<Nat> out;
  for (const auto& [p, _] : added_) out.push_back(p);
  for (const auto& [p, _] : removed_)
    if (!added_.count(p)) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

bool lesssim(const NSet& s, const NSet& t) { return s.combination_is_finite(t, ops::difference); }

bool commensurable(const NSet& s, const NSet& t) { return s.combination_is_finite(t, ops::symmetric); }

bool cofinite_in(const NSet& t, const NSet& s) {
  return subset(t, s) && (s - t).is_finite();
}

bool subset(const NSet& s, const NSet& t) { return (s - t).is_empty(); }

bool equal(const NSet& s, const NSet& t) { return s == t; }

std::vector<Nat> enumerate_upto(const NSet& s, Nat bound) {
  std::vector<Nat> out;
  for (Nat n = 1; n <= bound; ++n)
    if (s.contains(n)) out.push_back(n);
  return out;
}

std::vector<PowerTerm> enumerate_members(const NSet& s, std::size_t count) {
  std::vector<PowerTerm> out;
  if (!s.core().is_finite()) {
    // Positive density: a linear scan meets members at bounded gaps.
    for (Nat n = 1; out.size() < count; ++n)
      if (s.contains(n)) out.push_back({n, 1});
    return out;
  }
  for (Nat n : s.core().exceptions()) {
    if (out.size() == count) return out;
    out.push_back({n, 1});
  }
  // Merge the sparse families by magnitude, compared through k * log p.
  using Item = std::pair<double, PowerTerm>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  std::map<Nat, const PeriodicSet*> families;
  auto next_exponent = [](const PeriodicSet& e, Nat from) -> std::optional<Nat> {
    // e is infinite, so a member appears within one period past the exceptions.
    Nat limit = from + e.threshold() + e.period() + 1;
    for (Nat k = from; k <= limit; ++k)
      if (e.contains(k)) return k;
    return std::nullopt;
  };
  for (const auto& [p, e] : s.added()) {
    families[p] = &e;
    if (auto k = next_exponent(e, 1)) heap.push({*k * std::log(double(p)), PowerTerm{p, *k}});
  }
  while (out.size() < count && !heap.empty()) {
    auto [_, term] = heap.top();
    heap.pop();
    out.push_back(term);
    if (auto k = next_exponent(*families[term.base], term.exponent + 1))
      heap.push({*k * std::log(double(term.base)), PowerTerm{term.base, *k}});
  }
  return out;
}

NSet antichain_set(Nat q, const std::vector<Nat>& primes) {
  const PeriodicSet multiples = PeriodicSet::progression(q, q);
  std::map<Nat, PeriodicSet> families;
  for (Nat p : primes) families.emplace(p, multiples);
  return NSet::prime_power_union(families);
}

}  // namespace bousfield::setalg

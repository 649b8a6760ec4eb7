#include "bousfield/setalg/periodic_set.hpp"

#include <numeric>

#include "bousfield/errors.hpp"

namespace bousfield::setalg {

PeriodicSet::PeriodicSet() : pattern_(1, 0) {}

PeriodicSet PeriodicSet::empty() { return PeriodicSet(); }

PeriodicSet PeriodicSet::naturals() {
  PeriodicSet s;
  s.pattern_[0] = 1;
  return s;
}

PeriodicSet PeriodicSet::finite(std::vector<Nat> members) {
  for (Nat n : members)
    if (n == 0) throw PreconditionError("finite set members must be >= 1");
  return assemble(1, {0}, std::move(members), [](Nat) { return true; });
}

PeriodicSet PeriodicSet::progression(Nat a, Nat d) {
  if (a == 0 || d == 0) throw PreconditionError("ap(a,d) requires a >= 1 and d >= 1");
  if (d > kMaxPeriod) throw RangeError("progression difference exceeds the period limit");
  std::vector<char> pattern(d, 0);
  pattern[a % d] = 1;
  std::vector<Nat> early;
  for (Nat n = a % d == 0 ? d : a % d; n < a; n += d) early.push_back(n);
  return assemble(d, std::move(pattern), std::move(early), [](Nat) { return false; });
}

bool PeriodicSet::contains(Nat n) const {
  if (n == 0) return false;
  bool flipped = std::binary_search(exceptions_.begin(), exceptions_.end(), n);
  return pattern_contains(n) != flipped;
}

bool PeriodicSet::is_finite() const {
  return std::none_of(pattern_.begin(), pattern_.end(), [](char c) { return c != 0; });
}

std::optional<Nat> PeriodicSet::cardinality() const {
  if (!is_finite()) return std::nullopt;
  return exceptions_.size();
}

PeriodicSet PeriodicSet::pattern_only() const {
  PeriodicSet s = *this;
  s.exceptions_.clear();
  return s;
}

PeriodicSet PeriodicSet::combine(const PeriodicSet& other, BoolFn fn) const {
  Nat g = std::gcd(period_, other.period_);
  Nat d = period_ / g;
  if (d > kMaxPeriod / other.period_) throw RangeError("combined period exceeds the period limit");
  d *= other.period_;

  std::vector<char> pattern(d);
  for (Nat r = 0; r < d; ++r)
    pattern[r] = fn(pattern_[r % period_] != 0, other.pattern_[r % other.period_] != 0);

  std::vector<Nat> candidates = exceptions_;
  candidates.insert(candidates.end(), other.exceptions_.begin(), other.exceptions_.end());
  return assemble(d, std::move(pattern), std::move(candidates),
                  [&](Nat n) { return fn(contains(n), other.contains(n)); });
}

PeriodicSet PeriodicSet::complement() const { return combine(PeriodicSet(), ops::negate_left); }

std::vector<Nat> PeriodicSet::members_upto(Nat bound) const {
  std::vector<Nat> out;
  for (Nat n = 1; n <= bound; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

void PeriodicSet::canonicalize() {
  // Least period: the smallest divisor e of the current period for which the
  // pattern is e-periodic.
  for (Nat e = 1; e < period_; ++e) {
    if (period_ % e != 0) continue;
    bool ok = true;
    for (Nat r = e; r < period_ && ok; ++r) ok = pattern_[r] == pattern_[r % e];
    if (ok) {
      pattern_.resize(e);
      period_ = e;
      break;
    }
  }
  // Exceptions are defined against the pattern function, which the period
  // reduction leaves unchanged.
}

std::optional<Nat> checked_pow(Nat p, Nat k) {
  Nat result = 1;
  for (Nat i = 0; i < k; ++i)
    if (__builtin_mul_overflow(result, p, &result)) return std::nullopt;
  return result;
}

PeriodicSet exponent_trace(Nat p, const PeriodicSet& set) {
  if (p < 2) throw PreconditionError("exponent_trace needs a base >= 2");
  if (set.is_empty()) return set;
  if (set.period() == 1 && set.exceptions().empty()) return PeriodicSet::naturals();
  const Nat d = set.period();

  // r_k = p^k mod d, k >= 1. first_seen[r] = first k with r_k = r.
  std::vector<Nat> first_seen(d, 0);
  std::vector<Nat> residues{0};  // residues[k] = r_k; index 0 unused
  Nat r = p % d;
  Nat k = 1;
  while (first_seen[r] == 0) {
    first_seen[r] = k;
    residues.push_back(r);
    r = static_cast<Nat>((static_cast<unsigned __int128>(r) * p) % d);
    ++k;
  }
  const Nat cycle_start = first_seen[r];
  const Nat cycle_len = k - cycle_start;

  std::vector<char> pattern(cycle_len);
  for (Nat j = cycle_start; j < k; ++j) pattern[j % cycle_len] = set.pattern()[residues[j]];

  // Exponents where the true membership may differ from the periodic guess:
  // the pre-period and every k with p^k at or below the last exception.
  Nat last = cycle_start;
  if (!set.exceptions().empty()) {
    Nat top = set.exceptions().back();
    Nat kk = 0;
    for (Nat v = 1; v <= top / p;) {
      v *= p;
      ++kk;
    }
    last = std::max(last, kk);
  }
  std::vector<Nat> candidates;
  for (Nat j = 1; j <= last; ++j) candidates.push_back(j);

  auto member = [&](Nat j) {
    if (auto v = checked_pow(p, j)) return set.contains(*v);
    // p^j is past every exception; only its residue matters.
    Nat rr = 1 % d;
    for (Nat i = 0; i < j; ++i) rr = static_cast<Nat>((static_cast<unsigned __int128>(rr) * p) % d);
    return set.pattern()[rr] != 0;
  };
  return PeriodicSet::assemble(cycle_len, std::move(pattern), std::move(candidates), member);
}

bool is_prime(Nat n) {
  if (n < 2) return false;
  for (Nat q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<Nat> primes_upto(Nat bound) {
  std::vector<Nat> out;
  for (Nat n = 2; n <= bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

std::vector<Nat> first_primes(std::size_t count) {
  std::vector<Nat> out;
  for (Nat n = 2; out.size() < count; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

}  // namespace bousfield::setalg

#include "bousfield/classalg/classes.hpp"

#include <algorithm>

#include "bousfield/errors.hpp"

namespace bousfield::classalg {

using setalg::commensurable;
using setalg::lesssim;

Partition3::Partition3(NSet a, NSet b, NSet c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (!(a_ & b_).is_empty() || !(a_ & c_).is_empty() || !(b_ & c_).is_empty())
    throw PreconditionError("partition parts are not pairwise disjoint");
  if ((a_ | b_ | c_) != NSet::naturals()) throw PreconditionError("partition parts do not cover N");
}

GenClass GenClass::M(const NSet& s) { return unchecked(s, ~s, NSet::empty()); }
GenClass GenClass::I(const NSet& s) { return unchecked(NSet::empty(), ~s, s); }
GenClass GenClass::residue_field() { return unchecked(NSet::empty(), NSet::naturals(), NSet::empty()); }
GenClass GenClass::sphere() { return unchecked(NSet::naturals(), NSet::empty(), NSet::empty()); }
GenClass GenClass::reversed() const { return unchecked(c(), b(), a()); }

SumClass SumClass::operator+(const SumClass& other) const {
  std::vector<GenClass> all = summands_;
  all.insert(all.end(), other.summands_.begin(), other.summands_.end());
  return SumClass(std::move(all));
}

TensorCells tensor_cells(const GenClass& x, const GenClass& y) {
  const NSet &a = x.a(), &b = x.b(), &c = x.c();
  const NSet &s = y.a(), &t = y.b(), &u = y.c();
  NSet ct = c & t, cu = c & u, bu = b & u;
  TensorCells out;
  out.killing = ct | cu | bu;
  out.a = (a & s) | cu;
  out.b = (a & t) | (b & s) | (b & t) | bu | ct;
  out.c = (a & u) | (c & s);
  return out;
}

bool tensor_is_zero(const GenClass& x, const GenClass& y) {
  const NSet &b = x.b(), &c = x.c(), &t = y.b(), &u = y.c();
  using setalg::ops::intersect;
  return !c.combination_is_finite(u, intersect) || !c.combination_is_finite(t, intersect) ||
         !b.combination_is_finite(u, intersect);
}

bool tensor_is_zero(const SumClass& x, const SumClass& y) {
  for (const auto& g : x.summands())
    for (const auto& h : y.summands())
      if (!tensor_is_zero(g, h)) return false;
  return true;
}

SumClass tensor(const GenClass& x, const GenClass& y) {
  TensorCells cells = tensor_cells(x, y);
  if (!cells.killing.is_finite()) return SumClass::zero();
  return SumClass(GenClass::unchecked(std::move(cells.a), std::move(cells.b), std::move(cells.c)));
}

SumClass tensor(const SumClass& x, const SumClass& y) {
  std::vector<GenClass> out;
  for (const auto& g : x.summands())
    for (const auto& h : y.summands()) {
      SumClass p = tensor(g, h);
      if (p.is_zero()) continue;
      const GenClass& z = p.summands().front();
      if (std::none_of(out.begin(), out.end(), [&](const GenClass& w) { return eq(w, z); }))
        out.push_back(z);
    }
  return SumClass(std::move(out));
}

bool leq(const GenClass& x, const GenClass& y) { return lesssim(x.a(), y.a()) && lesssim(y.c(), x.c()); }

bool lexicographic_leq(const GenClass& x, const GenClass& y) {
  if (!lesssim(x.a(), y.a())) return false;
  if (!commensurable(x.a(), y.a())) return true;
  return lesssim(x.b(), y.b());
}

bool eq(const GenClass& x, const GenClass& y) {
  return commensurable(x.a(), y.a()) && commensurable(x.b(), y.b());
}

bool comparable(const GenClass& x, const GenClass& y) { return leq(x, y) || leq(y, x); }

bool strictly_less(const GenClass& x, const GenClass& y) { return leq(x, y) && !eq(x, y); }

namespace {

bool contains_class(const std::vector<GenClass>& xs, const GenClass& g) {
  return std::any_of(xs.begin(), xs.end(), [&](const GenClass& h) { return eq(g, h); });
}

}  // namespace

bool same_summand_classes(const SumClass& x, const SumClass& y) {
  for (const auto& g : x.summands())
    if (!contains_class(y.summands(), g)) return false;
  for (const auto& g : y.summands())
    if (!contains_class(x.summands(), g)) return false;
  return true;
}

SumClass dedupe(const SumClass& x) {
  std::vector<GenClass> out;
  for (const auto& g : x.summands())
    if (!contains_class(out, g)) out.push_back(g);
  return SumClass(std::move(out));
}

bool verify(const Witness& w, const SumClass& left, const SumClass& right) {
  if (w.kills == w.survives) return false;
  const SumClass& killed = w.kills == Side::Left ? left : right;
  const SumClass& kept = w.survives == Side::Left ? left : right;
  if (w.survivor >= kept.size()) return false;
  return tensor_is_zero(SumClass(w.object), killed) &&
         !tensor_is_zero(w.object, kept.summands()[w.survivor]);
}

std::optional<Witness> separating_witness(const SumClass& x, const SumClass& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    GenClass w = x.summands()[i].reversed();
    if (tensor_is_zero(SumClass(w), y)) return Witness{std::move(w), Side::Right, Side::Left, i};
  }
  return std::nullopt;
}

JoinComparison join_leq(const SumClass& x, const SumClass& y) {
  bool all_below = true;
  for (const auto& g : x.summands())
    if (std::none_of(y.summands().begin(), y.summands().end(),
                     [&](const GenClass& h) { return leq(g, h); })) {
      all_below = false;
      break;
    }
  if (all_below) return {Verdict::True, std::nullopt, {}};
  if (auto w = separating_witness(x, y)) return {Verdict::False, std::move(w), {}};
  return {Verdict::Unknown, std::nullopt,
          "some summand lies below no single summand on the right and no generator witness "
          "separates the sums"};
}

bool splits_prime_family(const NSet& s, Nat p) {
  auto e = s.exponents_of(p);
  return !e.is_finite() && !e.complement().is_finite();
}

std::optional<IncomparabilityCertificate> certify_incomparable(const GenClass& x, const GenClass& y) {
  auto forward = separating_witness(x, y);
  if (!forward) return std::nullopt;
  auto backward = separating_witness(y, x);
  if (!backward) return std::nullopt;
  return IncomparabilityCertificate{0, 1, std::move(*forward), std::move(*backward)};
}

namespace {

std::vector<IncomparabilityCertificate> certify_family(const std::vector<GenClass>& classes) {
  std::vector<IncomparabilityCertificate> out;
  out.reserve(classes.size() * (classes.size() - (classes.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      auto cert = certify_incomparable(classes[i], classes[j]);
      if (!cert)
        throw VerificationError("members " + std::to_string(i) + " and " + std::to_string(j) +
                                " are comparable");
      cert->i = i;
      cert->j = j;
      out.push_back(std::move(*cert));
    }
  return out;
}

}  // namespace

Antichain antichain(std::size_t n, const std::vector<Nat>& tracked_primes) {
  if (n > tracked_primes.size())
    throw PreconditionError("antichain of size " + std::to_string(n) + " needs " + std::to_string(n) +
                            " primes; the universe has " + std::to_string(tracked_primes.size()));
  Antichain out;
  for (std::size_t i = 0; i < n; ++i) {
    Nat q = tracked_primes[i];
    NSet s = setalg::antichain_set(q, tracked_primes);
    for (Nat p : tracked_primes)
      if (!splits_prime_family(s, p))
        throw VerificationError("S_" + std::to_string(q) + " does not split P_" + std::to_string(p));
    out.indices.push_back(q);
    out.classes.push_back(GenClass::M(s));
    out.sets.push_back(std::move(s));
  }
  out.certificates = certify_family(out.classes);
  return out;
}

NSet antichain_extend(const std::vector<NSet>& family, const std::vector<Nat>& tracked_primes) {
  if (family.size() > tracked_primes.size())
    throw PreconditionError("family has more members than tracked primes");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (Nat p : tracked_primes)
      if (!splits_prime_family(family[i], p))
        throw PreconditionError("member " + std::to_string(i) + " does not split P_" + std::to_string(p));
  NSet t;
  for (std::size_t i = 0; i < tracked_primes.size(); ++i) {
    NSet pp = NSet::prime_powers(tracked_primes[i]);
    t = t | (i < family.size() ? pp - family[i] : pp);
  }
  GenClass mt = GenClass::M(t);
  for (std::size_t i = 0; i < family.size(); ++i)
    if (!certify_incomparable(mt, GenClass::M(family[i])))
      throw VerificationError("diagonal set is comparable with member " + std::to_string(i));
  return t;
}

IntervalAntichain interval_antichain(const NSet& t, const NSet& u, std::size_t n,
                                     const std::vector<Nat>& tracked_primes) {
  if (!lesssim(t, u)) throw PreconditionError("interval needs T <~ U");
  if (commensurable(t, u)) throw PreconditionError("interval needs T !~ U");
  IntervalAntichain out;
  if (n == 0) return out;
  const NSet gap = u - t;
  GenClass low = GenClass::M(t), high = GenClass::M(u);
  for (Nat p : tracked_primes) {
    if (out.sets.size() == n) break;
    NSet pp = NSet::prime_powers(p);
    if (!(pp - gap).is_empty()) continue;
    NSet s = t | pp;
    GenClass g = GenClass::M(s);
    if (!strictly_less(low, g) || !strictly_less(g, high))
      throw PreconditionError("M(T | P_" + std::to_string(p) + ") is not strictly inside the interval");
    out.sets.push_back(std::move(s));
    out.classes.push_back(std::move(g));
  }
  if (out.sets.size() < n)
    throw PreconditionError("U \\ T contains only " + std::to_string(out.sets.size()) +
                            " tracked prime-power families, need " + std::to_string(n));
  out.certificates = certify_family(out.classes);
  return out;
}

SumClass tensor_power(const SumClass& x, std::size_t n) {
  if (n == 0) return SumClass(GenClass::sphere());
  SumClass p = dedupe(x);
  for (std::size_t i = 1; i < n && !p.is_zero(); ++i) p = tensor(p, x);
  return p;
}

std::optional<std::size_t> nilpotence_height(const SumClass& x) {
  constexpr std::size_t kMaxSteps = 4096;
  SumClass p = dedupe(x);
  if (p.is_zero()) return 0;
  std::vector<SumClass> seen{p};
  for (std::size_t n = 1; n <= kMaxSteps; ++n) {
    SumClass next = tensor(p, x);
    if (next.is_zero()) return n;
    for (const auto& s : seen)
      if (same_summand_classes(s, next)) return std::nullopt;
    seen.push_back(next);
    p = std::move(next);
  }
  throw RangeError("tensor powers did not settle within " + std::to_string(kMaxSteps) + " steps");
}

SumClass prime_family_sum(const std::vector<Nat>& primes) {
  std::vector<GenClass> out;
  for (Nat p : primes) {
    NSet pp = NSet::prime_powers(p);
    out.push_back(GenClass(Partition3(~pp, NSet::empty(), pp)));
  }
  return SumClass(std::move(out));
}

DescendingChainStep descending_chain_class(std::size_t m, const std::vector<Nat>& primes) {
  if (m == 0) throw PreconditionError("m must be at least 1");
  if (m > primes.size())
    throw PreconditionError("m = " + std::to_string(m) + " exceeds the " + std::to_string(primes.size()) +
                            " given primes");
  SumClass y = prime_family_sum(primes);
  SumClass previous = tensor_power(y, m - 1);
  SumClass power = tensor(previous, y);
  NSet tail;
  for (std::size_t i = m - 1; i < primes.size(); ++i) tail = tail | NSet::prime_powers(primes[i]);
  GenClass w = GenClass::M(~tail);
  bool kills = tensor_is_zero(SumClass(w), power);
  bool survives = !tensor_is_zero(SumClass(w), previous);
  return {m, std::move(power), std::move(previous), std::move(tail), std::move(w), kills, survives};
}

std::optional<Witness> distinguish_sums(const std::vector<GenClass>& left,
                                        const std::vector<GenClass>& right) {
  std::vector<GenClass> members;
  for (const auto* side : {&left, &right})
    for (const auto& g : *side)
      if (!contains_class(members, g)) members.push_back(g);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (comparable(members[i], members[j]))
        throw PreconditionError("summands are not drawn from a pairwise incomparable family");

  auto search = [](const std::vector<GenClass>& from, const std::vector<GenClass>& against,
                   Side from_side) -> std::optional<Witness> {
    SumClass other{against};
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (contains_class(against, from[i])) continue;
      GenClass w = from[i].reversed();
      if (!tensor_is_zero(SumClass(w), other) || tensor_is_zero(w, from[i]))
        throw VerificationError("reversed summand fails to separate the sums");
      Side kills = from_side == Side::Left ? Side::Right : Side::Left;
      return Witness{std::move(w), kills, from_side, i};
    }
    return std::nullopt;
  };
  if (auto w = search(left, right, Side::Left)) return w;
  return search(right, left, Side::Right);
}

MinimalityReport minimal_check(const GenClass& x) {
  GenClass bottom = GenClass::I(NSet::naturals());
  return {leq(bottom, x), leq(x, bottom), eq(x, bottom)};
}

std::optional<Witness> complement_obstruction(const GenClass& x, const GenClass& y) {
  if (!tensor_is_zero(x, y)) return std::nullopt;
  GenClass w = GenClass::I(NSet::naturals());
  Witness out{w, Side::Left, Side::Right, 0};
  if (!verify(out, SumClass(x) + SumClass(y), SumClass(GenClass::sphere())))
    throw VerificationError("I(N) does not separate X (+) Y from the unit");
  return out;
}

}  // namespace bousfield::classalg

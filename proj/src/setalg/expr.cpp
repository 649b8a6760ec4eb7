#include "bousfield/setalg/expr.hpp"

#include <sstream>

namespace bousfield::setalg {

namespace {

using detail::Lexer;
using Kind = SetExpr::Kind;

SetExprPtr make(Kind kind, std::vector<Nat> numbers = {}, std::vector<SetExprPtr> children = {}) {
  auto e = std::make_shared<SetExpr>();
  e->kind = kind;
  e->numbers = std::move(numbers);
  e->children = std::move(children);
  return e;
}

SetExprPtr parse_union(Lexer& lex);

SetExprPtr parse_primary(Lexer& lex) {
  if (lex.accept("(")) {
    auto e = parse_union(lex);
    lex.expect(")");
    return e;
  }
  const std::string name = lex.ident();
  if (name == "N") return make(Kind::Naturals);
  if (name == "empty") return make(Kind::Empty);
  if (name == "fin") {
    lex.expect("{");
    std::vector<Nat> xs;
    if (!lex.accept("}")) {
      do xs.push_back(lex.number());
      while (lex.accept(","));
      lex.expect("}");
    }
    return make(Kind::Finite, std::move(xs));
  }
  if (name == "ap") {
    lex.expect("(");
    Nat a = lex.number();
    lex.expect(",");
    Nat d = lex.number();
    lex.expect(")");
    if (a == 0 || d == 0) lex.fail("ap(a,d) needs a >= 1 and d >= 1");
    return make(Kind::Progression, {a, d});
  }
  if (name == "pow") {
    lex.expect("(");
    Nat p = lex.number();
    std::vector<SetExprPtr> kids;
    if (lex.accept(",")) kids.push_back(parse_union(lex));
    lex.expect(")");
    return make(Kind::Power, {p}, std::move(kids));
  }
  if (name == "Sq") {
    lex.expect("(");
    Nat q = lex.number();
    lex.expect(")");
    return make(Kind::Antichain, {q});
  }
  lex.fail("unknown set primitive '" + name + "'");
}

SetExprPtr parse_unary(Lexer& lex) {
  if (lex.accept("~")) return make(Kind::Complement, {}, {parse_unary(lex)});
  return parse_primary(lex);
}

template <class Next>
SetExprPtr parse_left_assoc(Lexer& lex, std::string_view symbol, Kind kind, Next next) {
  auto lhs = next(lex);
  while (lex.accept(symbol)) lhs = make(kind, {}, {lhs, next(lex)});
  return lhs;
}

SetExprPtr parse_inter(Lexer& lex) { return parse_left_assoc(lex, "&", Kind::Intersect, parse_unary); }
SetExprPtr parse_diff(Lexer& lex) { return parse_left_assoc(lex, "\\", Kind::Difference, parse_inter); }
SetExprPtr parse_symdiff(Lexer& lex) { return parse_left_assoc(lex, "^", Kind::SymDiff, parse_diff); }
SetExprPtr parse_union(Lexer& lex) { return parse_left_assoc(lex, "|", Kind::Union, parse_symdiff); }

void require_prime(Nat p, const PrimeUniverse& universe) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (!universe.contains(p))
    throw PreconditionError("prime " + std::to_string(p) + " is outside the universe (p_max = " +
                            std::to_string(universe.p_max) + ")");
}

// Returns k when n = p^k with k >= 1.
std::optional<Nat> log_exact(Nat n, Nat p) {
  if (n < p) return std::nullopt;
  Nat k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

}  // namespace

SetExprPtr parse_set(Lexer& lex) { return parse_union(lex); }

SetExprPtr parse_set(std::string_view text) {
  Lexer lex(text);
  auto e = parse_union(lex);
  if (!lex.at_end()) lex.fail("trailing input");
  return e;
}

NSet evaluate(const SetExpr& e, const PrimeUniverse& universe) {
  auto child = [&](std::size_t i) { return evaluate(*e.children[i], universe); };
  switch (e.kind) {
    case Kind::Naturals: return NSet::naturals();
    case Kind::Empty: return NSet::empty();
    case Kind::Finite: return NSet::finite(e.numbers);
    case Kind::Progression: return NSet::progression(e.numbers[0], e.numbers[1]);
    case Kind::Power: {
      require_prime(e.numbers[0], universe);
      if (e.children.empty()) return NSet::prime_powers(e.numbers[0]);
      auto exps = child(0).as_periodic();
      if (!exps) throw PreconditionError("exponent set of pow(p, E) must be ultimately periodic");
      return NSet::prime_powers(e.numbers[0], *exps);
    }
    case Kind::Antichain:
      require_prime(e.numbers[0], universe);
      return antichain_set(e.numbers[0], universe.primes());
    case Kind::Complement: return child(0).complement();
    case Kind::Intersect: return child(0) & child(1);
    case Kind::Difference: return child(0) - child(1);
    case Kind::SymDiff: return child(0) ^ child(1);
    case Kind::Union: return child(0) | child(1);
  }
  throw PreconditionError("unhandled set expression");
}

NSet evaluate_set(std::string_view text, const PrimeUniverse& universe) {
  return evaluate(*parse_set(text), universe);
}

bool expr_contains(const SetExpr& e, Nat n, const PrimeUniverse& universe) {
  auto child = [&](std::size_t i, Nat m) { return expr_contains(*e.children[i], m, universe); };
  switch (e.kind) {
    case Kind::Naturals: return n >= 1;
    case Kind::Empty: return false;
    case Kind::Finite: return std::find(e.numbers.begin(), e.numbers.end(), n) != e.numbers.end();
    case Kind::Progression: return n >= e.numbers[0] && (n - e.numbers[0]) % e.numbers[1] == 0;
    case Kind::Power: {
      auto k = log_exact(n, e.numbers[0]);
      if (!k) return false;
      return e.children.empty() || child(0, *k);
    }
    case Kind::Antichain:
      for (Nat p : universe.primes())
        if (auto k = log_exact(n, p)) return *k % e.numbers[0] == 0;
      return false;
    case Kind::Complement: return n >= 1 && !child(0, n);
    case Kind::Intersect: return child(0, n) && child(1, n);
    case Kind::Difference: return child(0, n) && !child(1, n);
    case Kind::SymDiff: return child(0, n) != child(1, n);
    case Kind::Union: return child(0, n) || child(1, n);
  }
  return false;
}

namespace {

std::string fin_list(const std::vector<Nat>& xs) {
  std::ostringstream os;
  os << "fin{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "}";
  return os.str();
}

std::string join(const std::vector<std::string>& parts, std::string_view op) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += std::string(" ") + std::string(op) + " ";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_expression(const PeriodicSet& s) {
  std::string base;
  const Nat d = s.period();
  std::vector<std::string> aps;
  Nat members = 0;
  for (Nat r = 0; r < d; ++r) members += s.pattern()[r] != 0;
  if (members == 0) {
    base = "empty";
  } else if (members == d) {
    base = "N";
  } else {
    for (Nat r = 1; r <= d; ++r)
      if (s.pattern()[r % d]) aps.push_back("ap(" + std::to_string(r) + "," + std::to_string(d) + ")");
    base = aps.size() == 1 ? aps[0] : "(" + join(aps, "|") + ")";
  }
  std::vector<Nat> extra, missing;
  for (Nat n : s.exceptions()) (s.pattern_contains(n) ? missing : extra).push_back(n);
  if (members == 0) return extra.empty() ? "empty" : fin_list(extra);
  std::string out = base;
  if (!missing.empty()) out = "(" + out + " \\ " + fin_list(missing) + ")";
  if (!extra.empty()) out = "(" + out + " | " + fin_list(extra) + ")";
  return out;
}

std::string to_expression(const NSet& s) {
  std::string out = to_expression(s.core());
  if (!s.removed().empty()) {
    std::vector<std::string> parts;
    for (const auto& [p, e] : s.removed())
      parts.push_back("pow(" + std::to_string(p) + ", " + to_expression(e) + ")");
    out = "(" + out + " \\ (" + join(parts, "|") + "))";
  }
  if (!s.added().empty()) {
    std::vector<std::string> parts{out == "empty" ? std::string() : out};
    if (parts[0].empty()) parts.clear();
    for (const auto& [p, e] : s.added())
      parts.push_back(e == PeriodicSet::naturals()
                          ? "pow(" + std::to_string(p) + ")"
                          : "pow(" + std::to_string(p) + ", " + to_expression(e) + ")");
    out = parts.size() == 1 ? parts[0] : "(" + join(parts, "|") + ")";
  }
  return out;
}

}  // namespace bousfield::setalg

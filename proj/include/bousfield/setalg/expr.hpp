#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bousfield/detail/lexer.hpp"
#include "bousfield/setalg/nset.hpp"

namespace bousfield::setalg {

/// The primes available to sparse families: every prime <= p_max.
struct PrimeUniverse {
  Nat p_max = 97;

  std::vector<Nat> primes() const { return primes_upto(p_max); }
  bool contains(Nat p) const { return p <= p_max && is_prime(p); }
};

/// Syntax tree of a set expression.
///
///   N | empty | fin{a,b,...} | ap(a,d) | pow(p) | pow(p, E) | Sq(q)
///   ~X | X & Y | X \ Y | X ^ Y | X | Y
///
/// Precedence, tightest first: ~, &, \, ^, |. Binary operators associate
/// to the left.
struct SetExpr {
  enum class Kind { Naturals, Empty, Finite, Progression, Power, Antichain,
                    Complement, Intersect, Difference, SymDiff, Union };

  Kind kind = Kind::Empty;
  std::vector<Nat> numbers;                     // literal arguments
  std::vector<std::shared_ptr<const SetExpr>> children;
};

using SetExprPtr = std::shared_ptr<const SetExpr>;

/// Throws ParseError on malformed input.
SetExprPtr parse_set(std::string_view text);
/// Parses one set expression from the current lexer position.
SetExprPtr parse_set(detail::Lexer& lex);

/// Canonical value. Throws PreconditionError for primes outside the universe
/// and for exponent sets that are not ultimately periodic.
NSet evaluate(const SetExpr& expr, const PrimeUniverse& universe);
NSet evaluate_set(std::string_view text, const PrimeUniverse& universe);

/// Membership read directly off the syntax tree, without building an NSet.
bool expr_contains(const SetExpr& expr, Nat n, const PrimeUniverse& universe);

/// A set expression that re-parses to `s`.
std::string to_expression(const NSet& s);
std::string to_expression(const PeriodicSet& s);

}  // namespace bousfield::setalg

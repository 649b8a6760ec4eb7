#pragma once

#include <string>
#include <string_view>

#include "bousfield/classalg/classes.hpp"
#include "bousfield/setalg/expr.hpp"

namespace bousfield::classalg {

/// Class expressions:
///
///   M(S) | I(S) | kk | sphere | zero | T(A; B; C) | (X)
///   X * Y      derived tensor
///   X (+) Y    direct sum
///
/// `*` binds tighter than `(+)`. Set arguments use the set grammar.
/// Throws ParseError on malformed input and PreconditionError when a
/// T(A; B; C) is not a partition.
SumClass parse_class(std::string_view text, const setalg::PrimeUniverse& universe);

/// Same, but the result must be a single generator.
GenClass parse_generator(std::string_view text, const setalg::PrimeUniverse& universe);

/// Text that parses back to an equal class (structurally equal parts).
std::string to_expression(const GenClass& g);
std::string to_expression(const SumClass& s);

}  // namespace bousfield::classalg

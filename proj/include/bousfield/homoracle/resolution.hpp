#pragma once

#include <string>
#include <vector>

#include "bousfield/homoracle/linalg.hpp"
#include "bousfield/homoracle/ring.hpp"

namespace bousfield::homoracle {

/// coeff * x^monomial * (generator `target` one homological degree down).
struct BoundaryTerm {
  Coeff coeff;
  std::vector<unsigned> monomial;
  std::size_t target;
  bool operator==(const BoundaryTerm&) const = default;
};

struct ResolutionGenerator {
  long degree;
  std::vector<unsigned> multi;  // per-factor homological degrees
  std::vector<BoundaryTerm> boundary;
  bool operator==(const ResolutionGenerator&) const = default;
};

/// P_s = free Lambda-modules on gens[s]; the augmentation P_0 -> M sends the
/// single s = 0 generator to the bottom monomial of M. Homological degree s
/// of the resolution sits at s + module.hshift.
struct FreeResolution {
  RingConfig ring;
  ElementaryModule module;
  int s_max = 0;
  std::vector<std::vector<ResolutionGenerator>> gens;

  std::vector<std::size_t> ranks() const;
};

/// Tensor product over the variables of the two-periodic resolutions
///   ... -> Lambda --x^{n-e}--> Lambda --x^e--> Lambda -> k[x]/x^e,
/// with Koszul signs. Free factors (e = n) contribute only s_i = 0.
FreeResolution build_resolution(const ElementaryModule& m, const RingConfig& r, int s_max);

struct ResolutionCheck {
  bool d_squared_zero = true;
  bool minimal = true;
  bool exact = true;
  std::string detail;
  bool ok() const { return d_squared_zero && minimal && exact; }
};

/// Checks d^2 = 0, that every boundary coefficient lies in the augmentation
/// ideal, and exactness: H_s(P) = 0 for 0 < s < s_max and H_0(P) has the
/// graded dimensions of the module.
ResolutionCheck verify_resolution(const FreeResolution& p);

}  // namespace bousfield::homoracle

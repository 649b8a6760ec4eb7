#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bousfield::homoracle {

/// One generator x_i of the truncated algebra: x_i^exponent = 0.
struct Variable {
  unsigned index;   // the i in x_i
  unsigned exponent;
  long degree;      // 2^i unless overridden
  bool operator==(const Variable&) const = default;
};

/// Lambda_m = k[x_i : i in the listed variables]/(x_i^{n_i}) over F_p.
class RingConfig {
 public:
  /// Checks n_i >= 2, distinct indices, degrees positive and even, p prime.
  RingConfig(std::vector<Variable> vars, unsigned characteristic = 2);

  /// Variables x_1..x_m with deg x_i = 2^i. `exponents` has m entries, or
  /// one entry used for every variable.
  static RingConfig truncated(unsigned m, const std::vector<unsigned>& exponents, unsigned characteristic = 2);

  std::size_t size() const { return vars_.size(); }
  const Variable& var(std::size_t pos) const { return vars_[pos]; }
  const std::vector<Variable>& vars() const { return vars_; }
  unsigned characteristic() const { return p_; }

  /// Position of x_index, if present.
  std::optional<std::size_t> position(unsigned index) const;
  /// Subring on the listed variable indices (order kept as in this ring).
  RingConfig restrict(const std::vector<unsigned>& indices) const;
  /// Subring on x_1..x_k of this ring's first k variables.
  RingConfig prefix(std::size_t k) const;

  /// Canonical text identifying the ring, used in cache keys.
  std::string digest() const;

  bool operator==(const RingConfig&) const = default;

 private:
  std::vector<Variable> vars_;
  unsigned p_;
};

/// Tensor product over the variables of k[x_i]/(x_i^{e_i}), 1 <= e_i <= n_i,
/// shifted by (homological, internal). e_i = 1 is the trivial factor,
/// e_i = n_i the free one.
struct ElementaryModule {
  std::vector<unsigned> exponents;  // one per ring position
  int hshift = 0;
  long tshift = 0;

  static ElementaryModule trivial(const RingConfig& r);
  static ElementaryModule free(const RingConfig& r);
  /// Free on the listed variable indices, trivial elsewhere.
  static ElementaryModule M(const RingConfig& r, const std::vector<unsigned>& indices);
  /// Finite I(W): M(W) moved down by its top degree.
  static ElementaryModule I(const RingConfig& r, const std::vector<unsigned>& indices);

  /// Throws PreconditionError when the exponents do not fit the ring.
  void validate(const RingConfig& r) const;

  std::uint64_t dimension() const;
  /// Internal degree of the top monomial, shift excluded.
  long top_degree(const RingConfig& r) const;
  /// Graded k-dual: same factors, shift (-h, -t - top).
  ElementaryModule dual(const RingConfig& r) const;
  /// The factors at the given ring positions, same shift.
  ElementaryModule select(const std::vector<std::size_t>& positions) const;

  /// Compact text, e.g. "E(2,1,3)[0,-4]".
  std::string text() const;

  bool operator==(const ElementaryModule&) const = default;
};

/// Monomial basis x^b, 0 <= b_i < e_i, in mixed radix order (first variable
/// fastest).
class ModuleBasis {
 public:
  ModuleBasis(const RingConfig& r, const ElementaryModule& m);

  std::size_t size() const { return degrees_.size(); }
  long degree(std::size_t idx) const { return degrees_[idx]; }
  unsigned exponent(std::size_t idx, std::size_t pos) const { return unsigned(idx / strides_[pos] % radix_[pos]); }
  /// x^mono * basis[idx]; nullopt when it vanishes.
  std::optional<std::size_t> act(std::size_t idx, const std::vector<unsigned>& mono) const;
  std::optional<std::size_t> act_var(std::size_t idx, std::size_t pos, unsigned power) const;
  std::size_t index_of(const std::vector<unsigned>& b) const;

 private:
  std::vector<unsigned> radix_;
  std::vector<std::size_t> strides_;
  std::vector<long> degrees_;
};

/// Graded dimensions of a module: degree -> dimension.
std::vector<std::pair<long, std::uint64_t>> graded_dimensions(const RingConfig& r, const ElementaryModule& m);

}  // namespace bousfield::homoracle

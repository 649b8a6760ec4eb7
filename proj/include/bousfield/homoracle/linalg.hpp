#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace bousfield::homoracle {

using Coeff = std::uint32_t;

/// Arithmetic in F_p for a small prime p.
class PrimeField {
 public:
  /// Throws PreconditionError unless p is a prime below 2^16.
  explicit PrimeField(Coeff p);

  Coeff p() const { return p_; }
  Coeff add(Coeff a, Coeff b) const { return (a + b) % p_; }
  Coeff sub(Coeff a, Coeff b) const { return (a + p_ - b) % p_; }
  Coeff mul(Coeff a, Coeff b) const { return Coeff(std::uint64_t(a) * b % p_); }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff inv(Coeff a) const;
  /// Reduces a signed integer into [0, p).
  Coeff from_int(long long v) const;

 private:
  Coeff p_;
};

/// Sparse vector: strictly increasing indices, nonzero coefficients.
using SparseVec = std::vector<std::pair<std::uint32_t, Coeff>>;

/// v + a*w.
SparseVec axpy(const PrimeField& f, const SparseVec& v, Coeff a, const SparseVec& w);
/// Sorts and merges an unordered list of (index, coeff) terms.
SparseVec normalize(const PrimeField& f, std::vector<std::pair<std::uint32_t, Coeff>> terms);

/// Incremental row echelon form keyed by leading index. Inserted vectors are
/// optionally tagged with their expression in terms of caller-chosen ids,
/// which lets the same structure produce kernels and solve linear systems.
/// Pivoting is by smallest index, so results are reproducible.
class Echelon {
 public:
  explicit Echelon(const PrimeField& f) : f_(f) {}

  /// Adds v (tagged as `tag`, e.g. a unit vector in the source basis).
  /// Returns the residual tag when v depends on earlier vectors: then the
  /// residual is a relation (kernel element) among the tags.
  std::optional<SparseVec> insert(SparseVec v, SparseVec tag = {});

  /// Reduces v; empty result means v is in the span.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Writes v as a combination of the inserted tags, or nullopt if v is not
  /// in the span.
  std::optional<SparseVec> solve(SparseVec v) const;

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    SparseVec vec;
    SparseVec tag;
  };
  const PrimeField& f_;
  std::map<std::uint32_t, Row> rows_;
};

/// Kernel basis of the map whose i-th column is columns[i].
std::vector<SparseVec> kernel(const PrimeField& f, const std::vector<SparseVec>& columns);
std::size_t rank(const PrimeField& f, const std::vector<SparseVec>& columns);

}  // namespace bousfield::homoracle

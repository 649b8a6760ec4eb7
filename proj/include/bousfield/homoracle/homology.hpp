#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bousfield/homoracle/linalg.hpp"
#include "bousfield/homoracle/resolution.hpp"

namespace bousfield::homoracle {

/// Homological degrees 0..s_max of the resolution and internal degrees
/// [d_min, d_max]. Differentials preserve internal degree and every
/// resolution is degreewise finite, so dimensions inside the window are
/// exact.
struct Window {
  int s_max = 8;
  long d_min = -64;
  long d_max = 64;
  bool contains(long d) const { return d >= d_min && d <= d_max; }
};

/// (s, d) -> dimension, zero outside the recorded window.
class BigradedVS {
 public:
  BigradedVS() = default;
  explicit BigradedVS(Window w) : window_(w) {}

  void set(int s, long d, std::uint64_t dim);
  std::uint64_t at(int s, long d) const;
  /// Sum over internal degrees at homological degree s.
  std::uint64_t total(int s) const;
  bool empty() const { return dims_.empty(); }
  const std::map<std::pair<int, long>, std::uint64_t>& entries() const { return dims_; }
  const Window& window() const { return window_; }

  /// First bidegree (in (s, d) order) where the two differ.
  std::optional<std::pair<int, long>> first_difference(const BigradedVS& other) const;
  bool operator==(const BigradedVS& o) const { return dims_ == o.dims_; }

 private:
  Window window_;
  std::map<std::pair<int, long>, std::uint64_t> dims_;  // nonzero entries only
};

/// Sparse map between module bases: column i is the image of basis element i.
using ModuleMap = std::vector<SparseVec>;

/// P (x)_Lambda N for a resolution P. Cells are pairs (generator of P_s,
/// basis element of N); each (s, d) block is indexed densely.
class TensorComplex {
 public:
  TensorComplex(std::shared_ptr<const FreeResolution> p, const ElementaryModule& n);

  const PrimeField& field() const { return field_; }
  int top() const { return int(p_->gens.size()) - 1; }
  std::size_t dim(int s, long d) const;
  /// Internal degrees occurring at homological degree s.
  std::vector<long> degrees(int s) const;
  /// Columns of the boundary C_{s,d} -> C_{s-1,d}.
  std::vector<SparseVec> boundary(int s, long d) const;
  /// Image of a chain under 1 (x) phi, where phi: N -> other.module().
  SparseVec push(const SparseVec& chain, int s, long d, const ModuleMap& phi, const TensorComplex& other) const;
  const ModuleBasis& module_basis() const { return basis_; }

 private:
  struct Block {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
  };
  const Block* block(int s, long d) const;
  std::uint64_t key(std::uint32_t g, std::uint32_t b) const { return std::uint64_t(g) * basis_.size() + b; }

  std::shared_ptr<const FreeResolution> p_;
  ModuleBasis basis_;
  PrimeField field_;
  std::vector<std::map<long, Block>> blocks_;
};

/// Hom_Lambda(P, N). Cells (generator g of P_s, basis element b of N) stand
/// for g -> b and have internal degree deg b - deg g.
class HomComplex {
 public:
  HomComplex(std::shared_ptr<const FreeResolution> p, const ElementaryModule& n);

  std::size_t dim(int s, long t) const;
  std::vector<long> degrees(int s) const;
  /// Columns of the coboundary C^{s,t} -> C^{s+1,t}.
  std::vector<SparseVec> coboundary(int s, long t) const;
  const PrimeField& field() const { return field_; }

 private:
  struct Block {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
  };
  const Block* block(int s, long t) const;

  std::shared_ptr<const FreeResolution> p_;
  ModuleBasis basis_;
  PrimeField field_;
  std::vector<std::map<long, Block>> blocks_;
  // cofaces_[s][g]: (generator of P_{s+1}, term index) whose boundary hits g.
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>> cofaces_;
};

/// Tor^Lambda_{s,d}(X, Y) for s <= s_max and d in the window. Reported
/// homological degree is s + h_X + h_Y.
BigradedVS tor(const ElementaryModule& x, const ElementaryModule& y, const RingConfig& r, const Window& w);

/// Ext_Lambda^{s,t}(X, N): homology of Hom(P_X, N), t = internal degree of
/// the cochain. Reported homological degree is s + h_X - h_N.
BigradedVS ext(const ElementaryModule& x, const ElementaryModule& n, const RingConfig& r, const Window& w);

/// Resolution through the process-wide cache.
std::shared_ptr<const FreeResolution> resolution(const ElementaryModule& m, const RingConfig& r, int s_max);

}  // namespace bousfield::homoracle

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bousfield/homoracle/homology.hpp"
#include "bousfield/setalg/nset.hpp"

namespace bousfield::homoracle {

/// Outcome of a verification: pass/fail, the first failure and where it
/// happened, and per-item summary lines.
struct Report {
  std::string check;
  bool passed = true;
  std::string failure;
  std::optional<std::pair<int, long>> bidegree;
  std::vector<std::string> lines;

  void fail(std::string what, std::optional<std::pair<int, long>> where = std::nullopt);
};

/// Ext^0 over Lambda(V) from k to M(W) is one-dimensional, in internal
/// degree sum_{i in W} (n_i - 1) deg x_i. V, W are variable indices.
Report socle_degree_check(const std::vector<unsigned>& v, const std::vector<unsigned>& w, const RingConfig& r);

/// Tor^Lambda(X, M(S^c)) against Tor^{Lambda(S)}(X_S, k) tensored with the
/// graded dimensions of X's factors off S.
Report check_shapiro(const ElementaryModule& x, const std::vector<unsigned>& s, const RingConfig& r, const Window& w);

/// The sequence 0 -> Sigma^{deg x_i} k[x_i]/x_i^{j-1} -> k[x_i]/x_i^j -> k -> 0,
/// tensored with `context` on the other variables: module-level exactness
/// and Lambda-linearity, then exactness of the long exact sequence in
/// tor(k, -) at every spot with s <= s_max, using ranks of the induced maps
/// and of the connecting map on homology.
Report check_triangle(unsigned i, unsigned j, const RingConfig& r, const Window& w,
                      std::optional<ElementaryModule> context = std::nullopt);

/// dim Tor_{s,d}(X, Y) = dim Ext^{s,-d}(X, DY) throughout the window.
Report check_duality(const ElementaryModule& x, const ElementaryModule& y, const RingConfig& r, const Window& w);

struct PredicateRow {
  std::size_t m;                    // variables x_1..x_m
  std::optional<long> ext0_bottom;  // least internal degree of Ext^0
  long predicted_bottom;            // sum over T^c & U & [m] of (n_i - 1) deg x_i
  bool ext0_in_window;              // Ext^0 meets [d_min, d_max]
  bool window_empty;                // no Ext^s, s <= s_max, in the window
};

struct PredicateReport {
  Report report;
  bool predicate_zero;  // T^c & U infinite
  std::vector<PredicateRow> rows;
};

/// Ext over Lambda_{m'} of (M(T & [m']), M(U & [m'])) for m' = 1..m. Asserts
/// that the bottom degree of Ext^0 follows the socle formula, so it grows
/// exactly at the m' in T^c & U.
PredicateReport predicate_consistency(const setalg::NSet& t, const setalg::NSet& u, const RingConfig& r,
                                      const Window& w);

}  // namespace bousfield::homoracle

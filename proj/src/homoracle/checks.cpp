#include "bousfield/homoracle/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "bousfield/errors.hpp"

namespace bousfield::homoracle {

void Report::fail(std::string what, std::optional<std::pair<int, long>> where) {
  if (passed) {
    failure = std::move(what);
    bidegree = where;
  }
  passed = false;
}

namespace {

std::string list_text(const std::vector<unsigned>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "}";
  return os.str();
}

std::string at_text(std::pair<int, long> b) {
  return "(s=" + std::to_string(b.first) + ", d=" + std::to_string(b.second) + ")";
}

void compare(Report& rep, const BigradedVS& lhs, const BigradedVS& rhs, const std::string& what) {
  if (auto diff = lhs.first_difference(rhs))
    rep.fail(what + " differ at " + at_text(*diff) + ": " + std::to_string(lhs.at(diff->first, diff->second)) +
                 " vs " + std::to_string(rhs.at(diff->first, diff->second)),
             diff);
}

std::vector<std::size_t> positions_of(const RingConfig& r, const std::vector<unsigned>& indices) {
  std::vector<std::size_t> out;
  for (unsigned i : indices) {
    auto p = r.position(i);
    if (!p) throw PreconditionError("x_" + std::to_string(i) + " is not in the ring");
    out.push_back(*p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Report socle_degree_check(const std::vector<unsigned>& v, const std::vector<unsigned>& w, const RingConfig& r) {
  Report rep{"socle", true, {}, {}, {}};
  for (unsigned i : w)
    if (std::find(v.begin(), v.end(), i) == v.end())
      throw PreconditionError("W = " + list_text(w) + " is not inside V = " + list_text(v));
  RingConfig rv = r.restrict(v);
  ElementaryModule mw = ElementaryModule::M(rv, w);
  long expected = mw.top_degree(rv);
  // Ext^0 lives in internal degrees [0, top]; one step beyond on each side
  // catches anything stray.
  BigradedVS e = ext(ElementaryModule::trivial(rv), mw, rv, Window{0, -1, expected + 1});
  BigradedVS want;
  want.set(0, expected, 1);
  rep.lines.push_back("V=" + list_text(v) + " W=" + list_text(w) + " expected degree " + std::to_string(expected));
  if (!(e == want)) {
    auto diff = e.first_difference(want);
    rep.fail("Ext^0 over Lambda(V=" + list_text(v) + ") of (k, M(W=" + list_text(w) +
                 ")) is not one-dimensional at degree " + std::to_string(expected),
             diff);
  }
  return rep;
}

Report check_shapiro(const ElementaryModule& x, const std::vector<unsigned>& s, const RingConfig& r, const Window& w) {
  Report rep{"shapiro", true, {}, {}, {}};
  x.validate(r);
  auto on = positions_of(r, s);
  std::vector<std::size_t> off;
  std::vector<unsigned> off_indices, on_indices;
  for (std::size_t p = 0; p < r.size(); ++p) {
    if (std::binary_search(on.begin(), on.end(), p)) {
      on_indices.push_back(r.var(p).index);
    } else {
      off.push_back(p);
      off_indices.push_back(r.var(p).index);
    }
  }
  BigradedVS lhs = tor(x, ElementaryModule::M(r, off_indices), r, w);

  RingConfig rs = r.restrict(on_indices), roff = r.restrict(off_indices);
  ElementaryModule xs = x.select(on);
  ElementaryModule xoff = x.select(off);
  xoff.hshift = 0;
  xoff.tshift = 0;
  auto off_dims = graded_dimensions(roff, xoff);
  long spread = off_dims.empty() ? 0 : off_dims.back().first;
  BigradedVS base = tor(xs, ElementaryModule::trivial(rs), rs, Window{w.s_max, w.d_min - spread, w.d_max});
  std::map<std::pair<int, long>, std::uint64_t> acc;
  for (const auto& [k, v] : base.entries())
    for (const auto& [e, n] : off_dims)
      if (w.contains(k.second + e)) acc[{k.first, k.second + e}] += v * n;
  BigradedVS rhs(w);
  for (const auto& [k, v] : acc) rhs.set(k.first, k.second, v);
  rep.lines.push_back("X=" + x.text() + " S=" + list_text(s));
  compare(rep, lhs, rhs, "Tor(X, M(S^c)) and Tor_{Lambda(S)}(X_S, k) (x) X_{S^c}");
  return rep;
}

Report check_duality(const ElementaryModule& x, const ElementaryModule& y, const RingConfig& r, const Window& w) {
  Report rep{"duality", true, {}, {}, {}};
  BigradedVS t = tor(x, y, r, w);
  BigradedVS e = ext(x, y.dual(r), r, Window{w.s_max, -w.d_max, -w.d_min});
  BigradedVS mirrored(w);
  for (const auto& [k, v] : e.entries()) mirrored.set(k.first, -k.second, v);
  rep.lines.push_back("X=" + x.text() + " Y=" + y.text());
  compare(rep, t, mirrored, "Tor(X, Y) and Ext(X, DY)");
  return rep;
}

// ---------------------------------------------------------------------------
// Triangles.

namespace {

// Homology data of one (s, d) spot of a tensor complex.
struct Spot {
  std::vector<SparseVec> cycles;
  std::size_t boundary_rank = 0;
  std::size_t dim() const { return cycles.size() - boundary_rank; }
};

ModuleMap module_map(const ModuleBasis& src, const std::function<std::optional<std::size_t>(std::size_t)>& on_basis) {
  ModuleMap m(src.size());
  for (std::size_t b = 0; b < src.size(); ++b)
    if (auto img = on_basis(b)) m[b] = {{std::uint32_t(*img), 1}};
  return m;
}

// Columns of 1 (x) phi on the (s, d) block.
std::vector<SparseVec> chain_map(const TensorComplex& from, const TensorComplex& to, const ModuleMap& phi, int s,
                                 long d) {
  std::vector<SparseVec> cols;
  for (std::uint32_t i = 0; i < from.dim(s, d); ++i) cols.push_back(from.push({{i, 1}}, s, d, phi, to));
  return cols;
}

SparseVec apply(const PrimeField& f, const std::vector<SparseVec>& cols, const SparseVec& v) {
  SparseVec out;
  for (const auto& [i, c] : v) out = axpy(f, out, c, cols[i]);
  return out;
}

Echelon boundaries(const TensorComplex& c, int s, long d) {
  Echelon e(c.field());
  for (auto& col : c.boundary(s + 1, d)) e.insert(std::move(col));
  return e;
}

// Rank on homology of a map given by the images of a cycle basis, modulo
// the boundaries of the target.
std::size_t induced_rank(const Echelon& target_boundaries, const std::vector<SparseVec>& images) {
  Echelon e = target_boundaries;
  std::size_t base = e.rank();
  for (const auto& v : images) e.insert(v);
  return e.rank() - base;
}

}  // namespace

Report check_triangle(unsigned i, unsigned j, const RingConfig& r, const Window& w,
                      std::optional<ElementaryModule> context) {
  Report rep{"triangle", true, {}, {}, {}};
  auto pos_opt = r.position(i);
  if (!pos_opt) throw PreconditionError("x_" + std::to_string(i) + " is not in the ring");
  const std::size_t pos = *pos_opt;
  const unsigned n = r.var(pos).exponent;
  if (j < 2 || j > n)
    throw PreconditionError("triangle index j = " + std::to_string(j) + " must lie in [2, " + std::to_string(n) + "]");
  if (w.s_max < 0) throw PreconditionError("s_max must be >= 0");
  ElementaryModule ctx = context.value_or(ElementaryModule::trivial(r));
  ctx.validate(r);

  ElementaryModule a = ctx, b = ctx, c = ctx;
  a.exponents[pos] = j - 1;
  a.tshift += r.var(pos).degree;
  b.exponents[pos] = j;
  c.exponents[pos] = 1;
  rep.lines.push_back("0 -> " + a.text() + " -> " + b.text() + " -> " + c.text() + " -> 0");

  const PrimeField f(r.characteristic());
  ModuleBasis ba(r, a), bb(r, b), bc(r, c);
  // f: x^e -> x^{e+1} in the x_i factor; g: x^0 -> 1, higher powers -> 0.
  ModuleMap fm = module_map(ba, [&](std::size_t v) -> std::optional<std::size_t> {
    std::vector<unsigned> e(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) e[k] = ba.exponent(v, k);
    ++e[pos];
    return bb.index_of(e);
  });
  ModuleMap gm = module_map(bb, [&](std::size_t v) -> std::optional<std::size_t> {
    if (bb.exponent(v, pos) != 0) return std::nullopt;
    std::vector<unsigned> e(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) e[k] = bb.exponent(v, k);
    return bc.index_of(e);
  });

  // Module level.
  for (std::size_t v = 0; v < ba.size(); ++v)
    for (const auto& [t, coeff] : fm[v])
      if (bb.degree(t) != ba.degree(v)) rep.fail("f does not preserve internal degree");
  for (std::size_t v = 0; v < bb.size(); ++v)
    for (const auto& [t, coeff] : gm[v])
      if (bc.degree(t) != bb.degree(v)) rep.fail("g does not preserve internal degree");
  if (rank(f, fm) != ba.size()) rep.fail("f is not injective");
  if (rank(f, gm) != bc.size()) rep.fail("g is not surjective");
  for (std::size_t v = 0; v < ba.size(); ++v)
    if (!apply(f, gm, fm[v]).empty()) rep.fail("g f != 0");
  if (bb.size() - rank(f, gm) != rank(f, fm)) rep.fail("ker g != im f");
  auto linear = [&](const ModuleBasis& src, const ModuleBasis& dst, const ModuleMap& phi, const char* name) {
    for (std::size_t k = 0; k < r.size(); ++k)
      for (std::size_t v = 0; v < src.size(); ++v) {
        SparseVec lhs;
        if (auto xv = src.act_var(v, k, 1)) lhs = phi[*xv];
        SparseVec rhs;
        for (const auto& [t, coeff] : phi[v])
          if (auto xt = dst.act_var(t, k, 1)) rhs = axpy(f, rhs, coeff, {{std::uint32_t(*xt), 1}});
        if (lhs != rhs) {
          rep.fail(std::string(name) + " is not Lambda-linear in x_" + std::to_string(r.var(k).index));
          return;
        }
      }
  };
  linear(ba, bb, fm, "f");
  linear(bb, bc, gm, "g");
  if (!rep.passed) return rep;

  // Long exact sequence in tor(k, -).
  auto p = resolution(ElementaryModule::trivial(r), r, w.s_max + 1);
  TensorComplex ca(p, a), cb(p, b), cc(p, c);
  const int top = w.s_max + 1;

  std::map<long, bool> degree_set;
  for (const TensorComplex* cx : {&ca, &cb, &cc})
    for (int s = 0; s <= top; ++s)
      for (long d : cx->degrees(s))
        if (w.contains(d)) degree_set[d] = true;

  std::size_t spots = 0;
  for (const auto& [d, unused] : degree_set) {
    (void)unused;
    // ranks[s] of alpha_s, beta_s, delta_s (delta_s : H_s(C) -> H_{s-1}(A)).
    std::vector<std::size_t> ra(top + 1), rb(top + 1), rd(top + 2, 0), ha(top + 1), hb(top + 1), hc(top + 1);
    for (int s = 0; s <= top; ++s) {
      auto za = kernel(f, ca.boundary(s, d)), zb = kernel(f, cb.boundary(s, d)), zc = kernel(f, cc.boundary(s, d));
      // At the top level, boundaries from s + 1 are not available; only the
      // maps into lower spots are used from there.
      Echelon bda = boundaries(ca, s, d), bdb = boundaries(cb, s, d), bdc = boundaries(cc, s, d);
      ha[s] = za.size() - bda.rank();
      hb[s] = zb.size() - bdb.rank();
      hc[s] = zc.size() - bdc.rank();

      auto fa = chain_map(ca, cb, fm, s, d), gb = chain_map(cb, cc, gm, s, d);
      std::vector<SparseVec> alpha_imgs, beta_imgs;
      for (const auto& z : za) alpha_imgs.push_back(apply(f, fa, z));
      for (const auto& z : zb) beta_imgs.push_back(apply(f, gb, z));
      ra[s] = induced_rank(bdb, alpha_imgs);
      rb[s] = induced_rank(bdc, beta_imgs);

      if (s == 0) continue;
      // Connecting map: lift z along g, take the boundary, pull back along f.
      Echelon g_solver(f), f_solver(f);
      for (std::uint32_t k = 0; k < gb.size(); ++k) g_solver.insert(gb[k], {{k, 1}});
      auto fa_lower = chain_map(ca, cb, fm, s - 1, d);
      for (std::uint32_t k = 0; k < fa_lower.size(); ++k) f_solver.insert(fa_lower[k], {{k, 1}});
      auto db = cb.boundary(s, d);
      auto da_lower = ca.boundary(s - 1, d);
      Echelon bda_lower = boundaries(ca, s - 1, d);
      std::vector<SparseVec> delta_imgs;
      auto connect = [&](const SparseVec& z) -> std::optional<SparseVec> {
        auto lift = g_solver.solve(z);
        if (!lift) {
          rep.fail("cycle of P (x) C has no lift along g", std::pair{s, d});
          return std::nullopt;
        }
        auto pulled = f_solver.solve(apply(f, db, *lift));
        if (!pulled) {
          rep.fail("boundary of a lift is not in the image of f", std::pair{s, d});
          return std::nullopt;
        }
        if (!apply(f, da_lower, *pulled).empty()) rep.fail("connecting map does not land in cycles", std::pair{s, d});
        return pulled;
      };
      for (const auto& z : zc)
        if (auto img = connect(z)) delta_imgs.push_back(std::move(*img));
      rd[s] = induced_rank(bda_lower, delta_imgs);
      // delta beta = 0 on homology.
      for (const auto& z : beta_imgs)
        if (auto img = connect(z); img && !bda_lower.contains(*img))
          rep.fail("delta beta != 0", std::pair{s, d});
      if (!rep.passed) return rep;
    }
    for (int s = 0; s <= w.s_max; ++s) {
      ++spots;
      if (rd[s + 1] + ra[s] != ha[s]) rep.fail("long exact sequence not exact at H_s(A)", std::pair{s, d});
      if (ra[s] + rb[s] != hb[s]) rep.fail("long exact sequence not exact at H_s(B)", std::pair{s, d});
      if (rb[s] + rd[s] != hc[s]) rep.fail("long exact sequence not exact at H_s(C)", std::pair{s, d});
    }
  }
  rep.lines.push_back(std::to_string(spots) + " (s, d) spots checked");
  return rep;
}

// ---------------------------------------------------------------------------

PredicateReport predicate_consistency(const setalg::NSet& t, const setalg::NSet& u, const RingConfig& r,
                                      const Window& w) {
  PredicateReport out{{"predicate", true, {}, {}, {}}, !(~t & u).is_finite(), {}};
  long predicted = 0;
  std::optional<long> previous_bottom;
  for (std::size_t m = 1; m <= r.size(); ++m) {
    RingConfig rm = r.prefix(m);
    const Variable& v = rm.var(m - 1);
    std::vector<unsigned> ti, ui;
    for (const auto& var : rm.vars()) {
      if (t.contains(var.index)) ti.push_back(var.index);
      if (u.contains(var.index)) ui.push_back(var.index);
    }
    bool grows = !t.contains(v.index) && u.contains(v.index);
    if (grows) predicted += long(v.exponent - 1) * v.degree;
    ElementaryModule mt = ElementaryModule::M(rm, ti), mu = ElementaryModule::M(rm, ui);

    // Ext^0 = Hom sits in internal degrees [-top(M(T)), top(M(U))].
    BigradedVS hom = ext(mt, mu, rm, Window{0, -mt.top_degree(rm), mu.top_degree(rm)});
    std::optional<long> bottom;
    for (const auto& [k, dim] : hom.entries())
      if (!bottom || k.second < *bottom) bottom = k.second;

    BigradedVS full = ext(mt, mu, rm, w);
    bool ext0_in_window = false;
    for (const auto& [k, dim] : full.entries()) ext0_in_window |= k.first == 0;
    out.rows.push_back({m, bottom, predicted, ext0_in_window, full.empty()});

    std::ostringstream line;
    line << "m=" << m << " ext0_bottom=" << (bottom ? std::to_string(*bottom) : "none")
         << " predicted=" << predicted << " ext0_in_window=" << ext0_in_window << " window_empty=" << full.empty();
    out.report.lines.push_back(line.str());
    if (bottom != predicted)
      out.report.fail("Ext^0 bottom degree " + (bottom ? std::to_string(*bottom) : std::string("none")) +
                          " differs from the socle formula " + std::to_string(predicted) + " at m = " + std::to_string(m),
                      std::pair{0, predicted});
    if (previous_bottom && bottom && (*bottom > *previous_bottom) != grows)
      out.report.fail("Ext^0 bottom degree does not move exactly at T^c & U (m = " + std::to_string(m) + ")",
                      std::pair{0, *bottom});
    previous_bottom = bottom;
  }
  return out;
}

}  // namespace bousfield::homoracle

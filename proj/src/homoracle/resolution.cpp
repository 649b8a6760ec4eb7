#include "bousfield/homoracle/resolution.hpp"

#include <map>

#include "bousfield/errors.hpp"

namespace bousfield::homoracle {

std::vector<std::size_t> FreeResolution::ranks() const {
  std::vector<std::size_t> out;
  for (const auto& g : gens) out.push_back(g.size());
  return out;
}

namespace {

// Internal degree of the s-th generator of the periodic resolution of
// k[x]/x^e over k[x]/x^n.
long factor_degree(unsigned s, unsigned e, unsigned n, long deg) {
  long pairs = s / 2;
  return pairs * long(n) * deg + (s % 2 ? long(e) * deg : 0);
}

// All multi-indices of total s with s_i = 0 on free factors.
void compositions(std::size_t pos, unsigned left, const std::vector<bool>& allowed, std::vector<unsigned>& cur,
                  std::vector<std::vector<unsigned>>& out) {
  if (pos == cur.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  // Later positions vary fastest in the output; the first factor carries
  // the largest degree first.
  for (unsigned v = allowed[pos] ? left : 0;; --v) {
    cur[pos] = v;
    compositions(pos + 1, left - v, allowed, cur, out);
    if (v == 0) break;
  }
  cur[pos] = 0;
}

}  // namespace

FreeResolution build_resolution(const ElementaryModule& m, const RingConfig& r, int s_max) {
  if (s_max < 0) throw PreconditionError("s_max must be >= 0");
  m.validate(r);
  const PrimeField f(r.characteristic());
  const std::size_t nv = r.size();
  std::vector<bool> allowed(nv);
  for (std::size_t i = 0; i < nv; ++i) allowed[i] = m.exponents[i] < r.var(i).exponent;

  FreeResolution p{r, m, s_max, {}};
  std::map<std::vector<unsigned>, std::size_t> previous;
  for (int s = 0; s <= s_max; ++s) {
    std::vector<std::vector<unsigned>> multis;
    std::vector<unsigned> cur(nv, 0);
    compositions(0, unsigned(s), allowed, cur, multis);
    std::vector<ResolutionGenerator> level;
    std::map<std::vector<unsigned>, std::size_t> here;
    for (auto& multi : multis) {
      ResolutionGenerator g{m.tshift, multi, {}};
      unsigned before = 0;  // sum of s_j for j < i, for the Koszul sign
      for (std::size_t i = 0; i < nv; ++i) {
        const unsigned si = multi[i], e = m.exponents[i], n = r.var(i).exponent;
        g.degree += factor_degree(si, e, n, r.var(i).degree);
        if (si > 0) {
          std::vector<unsigned> lower = multi;
          --lower[i];
          std::vector<unsigned> mono(nv, 0);
          mono[i] = si % 2 ? e : n - e;
          g.boundary.push_back({f.from_int(before % 2 ? -1 : 1), std::move(mono), previous.at(lower)});
        }
        before += si;
      }
      here.emplace(multi, level.size());
      level.push_back(std::move(g));
    }
    p.gens.push_back(std::move(level));
    previous = std::move(here);
  }
  return p;
}

ResolutionCheck verify_resolution(const FreeResolution& p) {
  ResolutionCheck out;
  const PrimeField f(p.ring.characteristic());
  const ElementaryModule lam = ElementaryModule::free(p.ring);
  const ModuleBasis ring_basis(p.ring, lam);
  const ModuleBasis mod_basis(p.ring, p.module);

  // Minimality and d^2 = 0 on generators.
  for (int s = 1; s <= p.s_max; ++s)
    for (std::size_t g = 0; g < p.gens[s].size(); ++g) {
      std::map<std::pair<std::size_t, std::size_t>, Coeff> dd;  // (gen in P_{s-2}, ring monomial)
      for (const auto& t : p.gens[s][g].boundary) {
        bool in_ideal = false;
        for (unsigned e : t.monomial) in_ideal |= e > 0;
        if (!in_ideal) {
          out.minimal = false;
          out.detail = "unit coefficient in d_" + std::to_string(s);
        }
        if (s < 2) continue;
        for (const auto& u : p.gens[s - 1][t.target].boundary) {
          std::vector<unsigned> mono = t.monomial;
          for (std::size_t i = 0; i < mono.size(); ++i) mono[i] += u.monomial[i];
          bool vanishes = false;
          for (std::size_t i = 0; i < mono.size(); ++i) vanishes |= mono[i] >= p.ring.var(i).exponent;
          if (vanishes) continue;
          auto& c = dd[{u.target, ring_basis.index_of(mono)}];
          c = f.add(c, f.mul(t.coeff, u.coeff));
        }
      }
      for (const auto& [key, c] : dd)
        if (c) {
          out.d_squared_zero = false;
          out.detail = "d^2 != 0 at s = " + std::to_string(s);
        }
    }

  // Exactness degreewise. Cells of P_s: (generator, ring basis element).
  std::map<long, std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> cells;  // d -> s -> cells
  for (int s = 0; s <= p.s_max; ++s)
    for (std::size_t g = 0; g < p.gens[s].size(); ++g)
      for (std::size_t b = 0; b < ring_basis.size(); ++b) {
        auto& per_s = cells[p.gens[s][g].degree + ring_basis.degree(b)];
        per_s.resize(p.s_max + 1);
        per_s[s].push_back({g, b});
      }
  std::map<long, std::uint64_t> module_dims;
  for (std::size_t i = 0; i < mod_basis.size(); ++i) ++module_dims[mod_basis.degree(i)];

  for (auto& [d, per_s] : cells) {
    per_s.resize(p.s_max + 1);
    std::vector<std::size_t> ranks(p.s_max + 2, 0);  // ranks[s] = rank of d_s on this block
    for (int s = 1; s <= p.s_max; ++s) {
      std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> target_index;
      for (std::uint32_t i = 0; i < per_s[s - 1].size(); ++i) target_index[per_s[s - 1][i]] = i;
      std::vector<SparseVec> cols;
      for (const auto& [g, b] : per_s[s]) {
        std::vector<std::pair<std::uint32_t, Coeff>> terms;
        for (const auto& t : p.gens[s][g].boundary)
          if (auto img = ring_basis.act(b, t.monomial)) terms.emplace_back(target_index.at({t.target, *img}), t.coeff);
        cols.push_back(normalize(f, std::move(terms)));
      }
      ranks[s] = rank(f, cols);
    }
    for (int s = 1; s < p.s_max; ++s) {
      std::size_t h = per_s[s].size() - ranks[s] - ranks[s + 1];
      if (h != 0) {
        out.exact = false;
        out.detail = "H_" + std::to_string(s) + " != 0 in internal degree " + std::to_string(d);
      }
    }
    std::uint64_t h0 = per_s[0].size() - (p.s_max >= 1 ? ranks[1] : 0);
    std::uint64_t want = module_dims.count(d) ? module_dims[d] : 0;
    if (p.s_max >= 1 && h0 != want) {
      out.exact = false;
      out.detail = "H_0 has dimension " + std::to_string(h0) + " in degree " + std::to_string(d) + ", expected " +
                   std::to_string(want);
    }
  }
  return out;
}

}  // namespace bousfield::homoracle

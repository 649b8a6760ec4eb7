#include "bousfield/homoracle/homology.hpp"

#include "bousfield/errors.hpp"
#include "bousfield/homoracle/cache.hpp"

namespace bousfield::homoracle {

void BigradedVS::set(int s, long d, std::uint64_t dim) {
  if (dim)
    dims_[{s, d}] = dim;
  else
    dims_.erase({s, d});
}

std::uint64_t BigradedVS::at(int s, long d) const {
  auto it = dims_.find({s, d});
  return it == dims_.end() ? 0 : it->second;
}

std::uint64_t BigradedVS::total(int s) const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : dims_)
    if (k.first == s) t += v;
  return t;
}

std::optional<std::pair<int, long>> BigradedVS::first_difference(const BigradedVS& other) const {
  auto a = dims_.begin(), b = other.dims_.begin();
  while (a != dims_.end() || b != other.dims_.end()) {
    if (b == other.dims_.end() || (a != dims_.end() && a->first < b->first)) return a->first;
    if (a == dims_.end() || b->first < a->first) return b->first;
    if (a->second != b->second) return a->first;
    ++a;
    ++b;
  }
  return std::nullopt;
}

std::shared_ptr<const FreeResolution> resolution(const ElementaryModule& m, const RingConfig& r, int s_max) {
  return ResolutionCache::global().get(m, r, s_max);
}

// ---------------------------------------------------------------------------

TensorComplex::TensorComplex(std::shared_ptr<const FreeResolution> p, const ElementaryModule& n)
    : p_(std::move(p)), basis_(p_->ring, n), field_(p_->ring.characteristic()) {
  blocks_.resize(p_->gens.size());
  for (std::size_t s = 0; s < p_->gens.size(); ++s)
    for (std::uint32_t g = 0; g < p_->gens[s].size(); ++g)
      for (std::uint32_t b = 0; b < basis_.size(); ++b) {
        Block& blk = blocks_[s][p_->gens[s][g].degree + basis_.degree(b)];
        blk.index.emplace(key(g, b), blk.cells.size());
        blk.cells.emplace_back(g, b);
      }
}

const TensorComplex::Block* TensorComplex::block(int s, long d) const {
  if (s < 0 || s >= int(blocks_.size())) return nullptr;
  auto it = blocks_[s].find(d);
  return it == blocks_[s].end() ? nullptr : &it->second;
}

std::size_t TensorComplex::dim(int s, long d) const {
  const Block* b = block(s, d);
  return b ? b->cells.size() : 0;
}

std::vector<long> TensorComplex::degrees(int s) const {
  std::vector<long> out;
  if (s >= 0 && s < int(blocks_.size()))
    for (const auto& [d, b] : blocks_[s]) out.push_back(d);
  return out;
}

std::vector<SparseVec> TensorComplex::boundary(int s, long d) const {
  const Block* src = block(s, d);
  if (!src) return {};
  const Block* dst = block(s - 1, d);
  std::vector<SparseVec> cols;
  cols.reserve(src->cells.size());
  for (const auto& [g, b] : src->cells) {
    std::vector<std::pair<std::uint32_t, Coeff>> terms;
    if (dst)
      for (const auto& t : p_->gens[s][g].boundary)
        if (auto img = basis_.act(b, t.monomial))
          terms.emplace_back(dst->index.at(key(std::uint32_t(t.target), std::uint32_t(*img))), t.coeff);
    cols.push_back(normalize(field_, std::move(terms)));
  }
  return cols;
}

SparseVec TensorComplex::push(const SparseVec& chain, int s, long d, const ModuleMap& phi,
                              const TensorComplex& other) const {
  const Block* src = block(s, d);
  const Block* dst = other.block(s, d);
  std::vector<std::pair<std::uint32_t, Coeff>> terms;
  for (const auto& [i, c] : chain) {
    auto [g, b] = src->cells[i];
    for (const auto& [b2, c2] : phi[b])
      terms.emplace_back(dst->index.at(other.key(g, b2)), field_.mul(c, c2));
  }
  return normalize(field_, std::move(terms));
}

// ---------------------------------------------------------------------------

HomComplex::HomComplex(std::shared_ptr<const FreeResolution> p, const ElementaryModule& n)
    : p_(std::move(p)), basis_(p_->ring, n), field_(p_->ring.characteristic()) {
  const std::size_t levels = p_->gens.size();
  blocks_.resize(levels);
  cofaces_.resize(levels);
  for (std::size_t s = 0; s < levels; ++s) {
    cofaces_[s].resize(p_->gens[s].size());
    for (std::uint32_t g = 0; g < p_->gens[s].size(); ++g)
      for (std::uint32_t b = 0; b < basis_.size(); ++b) {
        Block& blk = blocks_[s][basis_.degree(b) - p_->gens[s][g].degree];
        blk.index.emplace(std::uint64_t(g) * basis_.size() + b, blk.cells.size());
        blk.cells.emplace_back(g, b);
      }
    if (s == 0) continue;
    for (std::uint32_t g = 0; g < p_->gens[s].size(); ++g)
      for (std::uint32_t ti = 0; ti < p_->gens[s][g].boundary.size(); ++ti)
        cofaces_[s - 1][p_->gens[s][g].boundary[ti].target].emplace_back(g, ti);
  }
}

const HomComplex::Block* HomComplex::block(int s, long t) const {
  if (s < 0 || s >= int(blocks_.size())) return nullptr;
  auto it = blocks_[s].find(t);
  return it == blocks_[s].end() ? nullptr : &it->second;
}

std::size_t HomComplex::dim(int s, long t) const {
  const Block* b = block(s, t);
  return b ? b->cells.size() : 0;
}

std::vector<long> HomComplex::degrees(int s) const {
  std::vector<long> out;
  if (s >= 0 && s < int(blocks_.size()))
    for (const auto& [t, b] : blocks_[s]) out.push_back(t);
  return out;
}

std::vector<SparseVec> HomComplex::coboundary(int s, long t) const {
  const Block* src = block(s, t);
  if (!src) return {};
  const Block* dst = block(s + 1, t);
  std::vector<SparseVec> cols;
  cols.reserve(src->cells.size());
  for (const auto& [g, b] : src->cells) {
    std::vector<std::pair<std::uint32_t, Coeff>> terms;
    if (dst)
      for (const auto& [g2, ti] : cofaces_[s][g]) {
        const BoundaryTerm& term = p_->gens[s + 1][g2].boundary[ti];
        if (auto img = basis_.act(b, term.monomial))
          terms.emplace_back(dst->index.at(std::uint64_t(g2) * basis_.size() + *img), term.coeff);
      }
    cols.push_back(normalize(field_, std::move(terms)));
  }
  return cols;
}

// ---------------------------------------------------------------------------

namespace {

void check_window(const Window& w) {
  if (w.s_max < 0) throw PreconditionError("s_max must be >= 0");
  if (w.d_min > w.d_max) throw PreconditionError("empty internal-degree window");
}

}  // namespace

BigradedVS tor(const ElementaryModule& x, const ElementaryModule& y, const RingConfig& r, const Window& w) {
  check_window(w);
  x.validate(r);
  y.validate(r);
  TensorComplex c(resolution(x, r, w.s_max + 1), y);
  BigradedVS out(w);
  for (int s = 0; s <= w.s_max; ++s)
    for (long d : c.degrees(s)) {
      if (!w.contains(d)) continue;
      std::size_t h = c.dim(s, d) - rank(c.field(), c.boundary(s, d)) - rank(c.field(), c.boundary(s + 1, d));
      out.set(s + x.hshift + y.hshift, d, h);
    }
  return out;
}

BigradedVS ext(const ElementaryModule& x, const ElementaryModule& n, const RingConfig& r, const Window& w) {
  check_window(w);
  x.validate(r);
  n.validate(r);
  HomComplex c(resolution(x, r, w.s_max + 1), n);
  BigradedVS out(w);
  for (int s = 0; s <= w.s_max; ++s)
    for (long t : c.degrees(s)) {
      if (!w.contains(t)) continue;
      std::size_t dim = c.dim(s, t);
      std::size_t h = dim - rank(c.field(), c.coboundary(s, t)) - (s ? rank(c.field(), c.coboundary(s - 1, t)) : 0);
      out.set(s + x.hshift - n.hshift, t, h);
    }
  return out;
}

}  // namespace bousfield::homoracle

#include "bousfield/homoracle/linalg.hpp"

#include <algorithm>

#include "bousfield/errors.hpp"
#include "bousfield/setalg/periodic_set.hpp"

namespace bousfield::homoracle {

PrimeField::PrimeField(Coeff p) : p_(p) {
  if (p >= (1u << 16) || !setalg::is_prime(p))
    throw PreconditionError("characteristic " + std::to_string(p) + " is not a small prime");
}

Coeff PrimeField::inv(Coeff a) const {
  // a^(p-2) by repeated squaring.
  Coeff result = 1, base = a % p_;
  for (Coeff e = p_ - 2; e; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

Coeff PrimeField::from_int(long long v) const {
  long long r = v % (long long)p_;
  return Coeff(r < 0 ? r + p_ : r);
}

SparseVec axpy(const PrimeField& f, const SparseVec& v, Coeff a, const SparseVec& w) {
  if (a == 0) return v;
  SparseVec out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || w[j].first < v[i].first) {
      out.emplace_back(w[j].first, f.mul(a, w[j].second));
      ++j;
    } else {
      Coeff c = f.add(v[i].second, f.mul(a, w[j].second));
      if (c) out.emplace_back(v[i].first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec normalize(const PrimeField& f, std::vector<std::pair<std::uint32_t, Coeff>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (const auto& [i, c] : terms) {
    if (!out.empty() && out.back().first == i)
      out.back().second = f.add(out.back().second, c);
    else
      out.emplace_back(i, c % f.p());
    if (out.back().second == 0) out.pop_back();
  }
  return out;
}

std::optional<SparseVec> Echelon::insert(SparseVec v, SparseVec tag) {
  while (!v.empty()) {
    auto it = rows_.find(v.front().first);
    if (it == rows_.end()) {
      Coeff s = f_.inv(v.front().second);
      for (auto& [i, c] : v) c = f_.mul(c, s);
      for (auto& [i, c] : tag) c = f_.mul(c, s);
      std::uint32_t lead = v.front().first;
      rows_.emplace(lead, Row{std::move(v), std::move(tag)});
      return std::nullopt;
    }
    Coeff a = f_.neg(v.front().second);
    v = axpy(f_, v, a, it->second.vec);
    tag = axpy(f_, tag, a, it->second.tag);
  }
  return tag;
}

SparseVec Echelon::reduce(SparseVec v) const {
  std::size_t skip = 0;  // entries before `skip` have no pivot row
  while (skip < v.size()) {
    auto it = rows_.find(v[skip].first);
    if (it == rows_.end()) {
      ++skip;
      continue;
    }
    v = axpy(f_, v, f_.neg(v[skip].second), it->second.vec);
  }
  return v;
}

std::optional<SparseVec> Echelon::solve(SparseVec v) const {
  SparseVec combo;
  while (!v.empty()) {
    auto it = rows_.find(v.front().first);
    if (it == rows_.end()) return std::nullopt;
    Coeff a = v.front().second;
    v = axpy(f_, v, f_.neg(a), it->second.vec);
    combo = axpy(f_, combo, a, it->second.tag);
  }
  return combo;
}

std::vector<SparseVec> kernel(const PrimeField& f, const std::vector<SparseVec>& columns) {
  Echelon e(f);
  std::vector<SparseVec> out;
  for (std::uint32_t i = 0; i < columns.size(); ++i)
    if (auto rel = e.insert(columns[i], SparseVec{{i, 1}})) out.push_back(std::move(*rel));
  return out;
}

std::size_t rank(const PrimeField& f, const std::vector<SparseVec>& columns) {
  Echelon e(f);
  for (const auto& c : columns) e.insert(c);
  return e.rank();
}

}  // namespace bousfield::homoracle

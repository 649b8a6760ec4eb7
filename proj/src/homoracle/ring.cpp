#include "bousfield/homoracle/ring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bousfield/errors.hpp"
#include "bousfield/setalg/periodic_set.hpp"

namespace bousfield::homoracle {

RingConfig::RingConfig(std::vector<Variable> vars, unsigned characteristic)
    : vars_(std::move(vars)), p_(characteristic) {
  if (p_ >= (1u << 16) || !setalg::is_prime(p_))
    throw PreconditionError("characteristic " + std::to_string(p_) + " is not a small prime");
  std::set<unsigned> seen;
  for (const auto& v : vars_) {
    if (v.exponent < 2) throw PreconditionError("x_" + std::to_string(v.index) + " needs n_i >= 2");
    // Even degrees make the graded-commutative algebra commutative, so no
    // signs enter the resolutions.
    if (v.degree <= 0 || v.degree % 2 != 0)
      throw PreconditionError("deg x_" + std::to_string(v.index) + " must be positive and even");
    if (!seen.insert(v.index).second) throw PreconditionError("x_" + std::to_string(v.index) + " listed twice");
  }
}

RingConfig RingConfig::truncated(unsigned m, const std::vector<unsigned>& exponents, unsigned characteristic) {
  if (exponents.size() != m && exponents.size() != 1)
    throw PreconditionError("expected 1 or " + std::to_string(m) + " exponents, got " +
                            std::to_string(exponents.size()));
  if (m > 40) throw PreconditionError("at most 40 variables");
  std::vector<Variable> vars;
  for (unsigned i = 1; i <= m; ++i)
    vars.push_back({i, exponents.size() == 1 ? exponents[0] : exponents[i - 1], 1L << i});
  return RingConfig(std::move(vars), characteristic);
}

std::optional<std::size_t> RingConfig::position(unsigned index) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].index == index) return i;
  return std::nullopt;
}

RingConfig RingConfig::restrict(const std::vector<unsigned>& indices) const {
  std::vector<Variable> out;
  for (const auto& v : vars_)
    if (std::find(indices.begin(), indices.end(), v.index) != indices.end()) out.push_back(v);
  for (unsigned i : indices)
    if (!position(i)) throw PreconditionError("x_" + std::to_string(i) + " is not in the ring");
  return RingConfig(std::move(out), p_);
}

RingConfig RingConfig::prefix(std::size_t k) const {
  if (k > vars_.size()) throw PreconditionError("prefix longer than the ring");
  return RingConfig(std::vector<Variable>(vars_.begin(), vars_.begin() + long(k)), p_);
}

std::string RingConfig::digest() const {
  std::ostringstream os;
  os << "p=" << p_;
  for (const auto& v : vars_) os << ";x" << v.index << "^" << v.exponent << "@" << v.degree;
  return os.str();
}

ElementaryModule ElementaryModule::trivial(const RingConfig& r) {
  return {std::vector<unsigned>(r.size(), 1), 0, 0};
}

ElementaryModule ElementaryModule::free(const RingConfig& r) {
  ElementaryModule m;
  for (const auto& v : r.vars()) m.exponents.push_back(v.exponent);
  return m;
}

ElementaryModule ElementaryModule::M(const RingConfig& r, const std::vector<unsigned>& indices) {
  ElementaryModule m = trivial(r);
  for (unsigned i : indices) {
    auto pos = r.position(i);
    if (!pos) throw PreconditionError("x_" + std::to_string(i) + " is not in the ring");
    m.exponents[*pos] = r.var(*pos).exponent;
  }
  return m;
}

ElementaryModule ElementaryModule::I(const RingConfig& r, const std::vector<unsigned>& indices) {
  ElementaryModule m = M(r, indices);
  m.tshift = -m.top_degree(r);
  return m;
}

void ElementaryModule::validate(const RingConfig& r) const {
  if (exponents.size() != r.size())
    throw PreconditionError("module has " + std::to_string(exponents.size()) + " factors for a ring with " +
                            std::to_string(r.size()) + " variables");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (exponents[i] < 1 || exponents[i] > r.var(i).exponent)
      throw PreconditionError("factor exponent for x_" + std::to_string(r.var(i).index) + " must lie in [1, " +
                              std::to_string(r.var(i).exponent) + "]");
}

std::uint64_t ElementaryModule::dimension() const {
  std::uint64_t d = 1;
  for (unsigned e : exponents) d *= e;
  return d;
}

long ElementaryModule::top_degree(const RingConfig& r) const {
  long t = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) t += long(exponents[i] - 1) * r.var(i).degree;
  return t;
}

ElementaryModule ElementaryModule::dual(const RingConfig& r) const {
  return {exponents, -hshift, -tshift - top_degree(r)};
}

ElementaryModule ElementaryModule::select(const std::vector<std::size_t>& positions) const {
  ElementaryModule m{{}, hshift, tshift};
  for (auto p : positions) m.exponents.push_back(exponents.at(p));
  return m;
}

std::string ElementaryModule::text() const {
  std::ostringstream os;
  os << "E(";
  for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
  os << ")";
  if (hshift || tshift) os << "[" << hshift << "," << tshift << "]";
  return os.str();
}

ModuleBasis::ModuleBasis(const RingConfig& r, const ElementaryModule& m) : radix_(m.exponents) {
  m.validate(r);
  std::size_t stride = 1;
  for (unsigned e : radix_) {
    strides_.push_back(stride);
    stride *= e;
  }
  degrees_.resize(stride);
  for (std::size_t idx = 0; idx < stride; ++idx) {
    long d = m.tshift;
    for (std::size_t i = 0; i < radix_.size(); ++i) d += long(exponent(idx, i)) * r.var(i).degree;
    degrees_[idx] = d;
  }
}

std::optional<std::size_t> ModuleBasis::act(std::size_t idx, const std::vector<unsigned>& mono) const {
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (!mono[i]) continue;
    if (exponent(idx, i) + mono[i] >= radix_[i]) return std::nullopt;
    idx += mono[i] * strides_[i];
  }
  return idx;
}

std::optional<std::size_t> ModuleBasis::act_var(std::size_t idx, std::size_t pos, unsigned power) const {
  if (exponent(idx, pos) + power >= radix_[pos]) return std::nullopt;
  return idx + power * strides_[pos];
}

std::size_t ModuleBasis::index_of(const std::vector<unsigned>& b) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < b.size(); ++i) idx += b[i] * strides_[i];
  return idx;
}

std::vector<std::pair<long, std::uint64_t>> graded_dimensions(const RingConfig& r, const ElementaryModule& m) {
  ModuleBasis basis(r, m);
  std::map<long, std::uint64_t> dims;
  for (std::size_t i = 0; i < basis.size(); ++i) ++dims[basis.degree(i)];
  return {dims.begin(), dims.end()};
}

}  // namespace bousfield::homoracle

#include "bousfield/cli/config.hpp"

#include <cstdlib>
#include <regex>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bousfield/errors.hpp"

namespace bousfield::cli {

using homoracle::ElementaryModule;
using homoracle::RingConfig;

homoracle::RingConfig Config::ring(unsigned m) const {
  std::vector<unsigned> ns;
  for (unsigned i = 1; i <= m; ++i) ns.push_back(exponent(i));
  if (m == 0) return RingConfig({}, characteristic);
  return RingConfig::truncated(m, ns, characteristic);
}

homoracle::Window Config::window() const { return {s_max, d_min.value_or(-d_max), d_max}; }

void Config::validate() const {
  for (unsigned e : exponents)
    if (e < 2) throw PreconditionError("exponents must be >= 2");
  if (exponent_tail < 2) throw PreconditionError("exponent_tail must be >= 2");
  if (p_max < 2) throw PreconditionError("pmax must be >= 2");
  if (s_max < 0) throw PreconditionError("smax must be >= 0");
  if (d_max <= 0) throw PreconditionError("dmax must be positive");
  if (d_min && *d_min > d_max) throw PreconditionError("dmin exceeds dmax");
}

namespace {

long parse_long(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad value for " + key + ": '" + text + "'");
  }
}

std::vector<unsigned> parse_list(const std::string& key, const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<unsigned> out;
  for (auto& p : parts) {
    boost::trim(p);
    long v = parse_long(key, p);
    if (v < 0) throw PreconditionError(key + " must be non-negative");
    out.push_back(unsigned(v));
  }
  return out;
}

}  // namespace

void set_exponents(Config& c, const std::string& text) {
  auto list = parse_list("exponents", text);
  if (list.empty()) throw ParseError("empty exponent list");
  c.exponent_tail = list.back();
  if (list.size() == 1)
    c.exponents.clear();
  else
    c.exponents = list;
}

void load_config_file(Config& c, const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError("config " + path + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  auto get = [&](const char* key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(key)) return boost::trim_copy(*v);
    return std::nullopt;
  };
  if (auto v = get("ring.exponents")) c.exponents = parse_list("exponents", *v);
  if (auto v = get("ring.exponent_tail")) c.exponent_tail = unsigned(parse_long("exponent_tail", *v));
  if (auto v = get("ring.characteristic")) c.characteristic = unsigned(parse_long("characteristic", *v));
  if (auto v = get("sets.pmax")) c.p_max = setalg::Nat(parse_long("pmax", *v));
  if (auto v = get("oracle.smax")) c.s_max = int(parse_long("smax", *v));
  if (auto v = get("oracle.dmax")) c.d_max = parse_long("dmax", *v);
  if (auto v = get("oracle.dmin")) c.d_min = parse_long("dmin", *v);
  if (auto v = get("oracle.cache_dir")) c.cache_dir = *v;
}

void apply_environment(Config& c) {
  if (const char* v = std::getenv("BOUSFIELD_CACHE_DIR"); v && *v) c.cache_dir = v;
  if (const char* v = std::getenv("BOUSFIELD_SMAX"); v && *v) c.s_max = int(parse_long("BOUSFIELD_SMAX", v));
  if (const char* v = std::getenv("BOUSFIELD_DMAX"); v && *v) c.d_max = parse_long("BOUSFIELD_DMAX", v);
}

ElementaryModule parse_module(const std::string& raw, const RingConfig& r) {
  static const std::regex shape(R"(^(k|L|M\{([0-9,]*)\}|I\{([0-9,]*)\}|E\(([0-9,]+)\))(\[(-?[0-9]+),(-?[0-9]+)\])?$)");
  std::string text = raw;
  boost::erase_all(text, " ");
  std::smatch m;
  if (!std::regex_match(text, m, shape)) throw ParseError("bad module '" + raw + "'");
  auto indices = [&](const std::string& list) {
    std::vector<unsigned> out;
    if (!list.empty()) out = parse_list("module", list);
    return out;
  };
  ElementaryModule mod;
  const std::string head = m[1];
  if (head == "k") {
    mod = ElementaryModule::trivial(r);
  } else if (head == "L") {
    mod = ElementaryModule::free(r);
  } else if (head[0] == 'M') {
    mod = ElementaryModule::M(r, indices(m[2]));
  } else if (head[0] == 'I') {
    mod = ElementaryModule::I(r, indices(m[3]));
  } else {
    mod.exponents = indices(m[4]);
  }
  if (m[5].matched) {
    mod.hshift += int(parse_long("shift", m[6]));
    mod.tshift += parse_long("shift", m[7]);
  }
  mod.validate(r);
  return mod;
}

}  // namespace bousfield::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bousfield/homoracle/homology.hpp"
#include "bousfield/setalg/expr.hpp"

namespace bousfield::cli {

/// n_i = exponents[i-1] for i within the list, exponent_tail afterwards.
struct Config {
  std::vector<unsigned> exponents;
  unsigned exponent_tail = 2;
  unsigned characteristic = 2;
  setalg::Nat p_max = 97;
  int s_max = 8;
  long d_max = 64;
  std::optional<long> d_min;  // -d_max when unset
  std::optional<std::string> cache_dir;

  unsigned exponent(unsigned i) const { return i <= exponents.size() ? exponents[i - 1] : exponent_tail; }
  homoracle::RingConfig ring(unsigned m) const;
  homoracle::Window window() const;
  setalg::PrimeUniverse universe() const { return {p_max}; }
  /// Throws PreconditionError on non-positive bounds or exponents below 2.
  void validate() const;
};

/// Reads an INI file:
///   [ring]   exponents = 2,3   exponent_tail = 2   characteristic = 2
///   [sets]   pmax = 97
///   [oracle] smax = 8   dmax = 64   dmin = -64   cache_dir = /path
/// Keys not present keep their current values.
void load_config_file(Config& c, const std::string& path);

/// BOUSFIELD_CACHE_DIR, BOUSFIELD_SMAX, BOUSFIELD_DMAX.
void apply_environment(Config& c);

/// "3" -> constant 3; "2,3" -> prefix 2,3 with tail 3.
void set_exponents(Config& c, const std::string& text);

/// Module grammar over a ring with m variables:
///   k | L | M{i,...} | I{i,...} | E(e_1,...,e_m), optionally followed by
///   [h,t] (homological, internal shift).
homoracle::ElementaryModule parse_module(const std::string& text, const homoracle::RingConfig& r);

}  // namespace bousfield::cli

#include "bousfield/homoracle/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

namespace bousfield::homoracle {

using nlohmann::json;

ResolutionCache& ResolutionCache::global() {
  static ResolutionCache cache;
  return cache;
}

void ResolutionCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(mu_);
  dir_ = std::move(dir);
}

std::optional<std::filesystem::path> ResolutionCache::directory() const {
  std::lock_guard lock(mu_);
  return dir_;
}

ResolutionCache::Stats ResolutionCache::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void ResolutionCache::clear_memory() {
  std::lock_guard lock(mu_);
  memory_.clear();
}

std::string ResolutionCache::key(const ElementaryModule& m, const RingConfig& r, int s_max) {
  return r.digest() + "|" + m.text() + "|s" + std::to_string(s_max);
}

std::string ResolutionCache::serialize(const FreeResolution& p) {
  json gens = json::array();
  for (const auto& level : p.gens) {
    json lj = json::array();
    for (const auto& g : level) {
      json terms = json::array();
      for (const auto& t : g.boundary) terms.push_back({t.coeff, t.monomial, t.target});
      lj.push_back({{"degree", g.degree}, {"multi", g.multi}, {"boundary", terms}});
    }
    gens.push_back(std::move(lj));
  }
  json record = {{"format_version", kCacheFormatVersion},
                 {"key", key(p.module, p.ring, p.s_max)},
                 {"s_max", p.s_max},
                 {"generators", std::move(gens)}};
  return record.dump();
}

std::optional<FreeResolution> ResolutionCache::deserialize(const std::string& text, const ElementaryModule& m,
                                                           const RingConfig& r, int s_max) {
  try {
    json j = json::parse(text);
    if (j.at("format_version").get<int>() != kCacheFormatVersion) return std::nullopt;
    if (j.at("key").get<std::string>() != key(m, r, s_max)) return std::nullopt;
    FreeResolution p{r, m, s_max, {}};
    for (const auto& lj : j.at("generators")) {
      std::vector<ResolutionGenerator> level;
      for (const auto& gj : lj) {
        ResolutionGenerator g{gj.at("degree").get<long>(), gj.at("multi").get<std::vector<unsigned>>(), {}};
        for (const auto& tj : gj.at("boundary"))
          g.boundary.push_back({tj.at(0).get<Coeff>(), tj.at(1).get<std::vector<unsigned>>(), tj.at(2).get<std::size_t>()});
        level.push_back(std::move(g));
      }
      p.gens.push_back(std::move(level));
    }
    if (p.gens.size() != std::size_t(s_max) + 1) return std::nullopt;
    return p;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace

std::optional<std::filesystem::path> ResolutionCache::file_for(const std::string& k) const {
  if (!dir_) return std::nullopt;
  return *dir_ / ("res-" + fnv1a_hex(k) + ".json");
}

std::shared_ptr<const FreeResolution> ResolutionCache::get(const ElementaryModule& m, const RingConfig& r, int s_max) {
  const std::string k = key(m, r, s_max);
  std::optional<std::filesystem::path> file;
  {
    std::lock_guard lock(mu_);
    if (auto it = memory_.find(k); it != memory_.end()) {
      ++stats_.memory_hits;
      return it->second;
    }
    file = file_for(k);
  }

  std::shared_ptr<const FreeResolution> result;
  bool from_disk = false;
  if (file && std::filesystem::exists(*file)) {
    std::ifstream in(*file);
    std::stringstream ss;
    ss << in.rdbuf();
    if (auto p = deserialize(ss.str(), m, r, s_max)) {
      result = std::make_shared<const FreeResolution>(std::move(*p));
      from_disk = true;
    }
  }
  if (!result) {
    result = std::make_shared<const FreeResolution>(build_resolution(m, r, s_max));
    if (file && !std::filesystem::exists(*file)) {
      static std::atomic<unsigned> counter{0};
      std::error_code ec;
      std::filesystem::create_directories(file->parent_path(), ec);
      auto tmp = *file;
      tmp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
      {
        std::ofstream out(tmp);
        out << serialize(*result);
      }
      // Write-once: a record that appeared meanwhile wins.
      if (std::filesystem::exists(*file))
        std::filesystem::remove(tmp, ec);
      else
        std::filesystem::rename(tmp, *file, ec);
      if (ec) std::filesystem::remove(tmp, ec);
    }
  }

  std::lock_guard lock(mu_);
  ++(from_disk ? stats_.disk_hits : stats_.builds);
  auto [it, inserted] = memory_.emplace(k, result);
  return it->second;
}

}  // namespace bousfield::homoracle

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "bousfield/homoracle/resolution.hpp"

namespace bousfield::homoracle {

inline constexpr int kCacheFormatVersion = 1;

/// Read-through cache of resolutions, in memory and optionally on disk. Disk
/// records are JSON, keyed by (ring digest, module text, s_max), written once
/// through a temporary file and a rename. Records with another format
/// version or key are ignored and rebuilt.
class ResolutionCache {
 public:
  static ResolutionCache& global();

  void set_directory(std::optional<std::filesystem::path> dir);
  std::optional<std::filesystem::path> directory() const;

  std::shared_ptr<const FreeResolution> get(const ElementaryModule& m, const RingConfig& r, int s_max);

  struct Stats {
    std::size_t memory_hits = 0, disk_hits = 0, builds = 0;
  };
  Stats stats() const;
  void clear_memory();

  static std::string key(const ElementaryModule& m, const RingConfig& r, int s_max);
  static std::string serialize(const FreeResolution& p);
  /// nullopt when the record is malformed or belongs to another key/version.
  static std::optional<FreeResolution> deserialize(const std::string& text, const ElementaryModule& m,
                                                   const RingConfig& r, int s_max);

 private:
  std::optional<std::filesystem::path> file_for(const std::string& key) const;

  mutable std::mutex mu_;
  std::optional<std::filesystem::path> dir_;
  std::unordered_map<std::string, std::shared_ptr<const FreeResolution>> memory_;
  Stats stats_;
};

}  // namespace bousfield::homoracle

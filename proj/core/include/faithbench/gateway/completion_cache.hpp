#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace faithbench {

// Persistent response cache: one file per key under the cache directory,
// filename = hex of the key hash, value = raw completion text. Concurrent
// readers are fine; writers serialize and land via rename so readers never see
// a torn file. I/O failures degrade to uncached operation with a warning.
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path dir);

  std::optional<std::string> get(std::uint64_t key) const;
  void put(std::uint64_t key, const std::string& value);

  const std::filesystem::path& dir() const { return dir_; }

  static std::uint64_t hash_key(const std::string& material);  // FNV-1a 64

 private:
  std::filesystem::path path_for(std::uint64_t key) const;

  std::filesystem::path dir_;
  mutable std::mutex write_mu_;
};

}  // namespace faithbench

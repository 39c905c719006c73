#include "faithbench/gateway/completion_cache.hpp"

#include <fstream>
#include <iostream>

namespace faithbench {

namespace {

void warn(const std::string& msg) { std::cerr << "[faithbench] warning: " << msg << "\n"; }

}  // namespace

CompletionCache::CompletionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) warn("cannot create cache dir " + dir_.string() + ": " + ec.message());
}

std::uint64_t CompletionCache::hash_key(const std::string& material) {
  // FNV-1a 64-bit; stable across runs and platforms.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : material) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::filesystem::path CompletionCache::path_for(std::uint64_t key) const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(key));
  return dir_ / (std::string(buf) + ".txt");
}

std::optional<std::string> CompletionCache::get(std::uint64_t key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string value((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) {
    warn("cache read failed for " + path_for(key).string());
    return std::nullopt;
  }
  return value;
}

void CompletionCache::put(std::uint64_t key, const std::string& value) {
  std::lock_guard lock(write_mu_);
  const auto final_path = path_for(key);
  const auto tmp_path = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      warn("cache write failed for " + final_path.string() + "; continuing uncached");
      return;
    }
    out.write(value.data(), static_cast<std::streamsize>(value.size()));
    if (!out.good()) {
      warn("cache write failed for " + final_path.string() + "; continuing uncached");
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) warn("cache rename failed for " + final_path.string() + ": " + ec.message());
}

}  // namespace faithbench

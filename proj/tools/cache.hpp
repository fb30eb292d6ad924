#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace cap {

inline constexpr const char* tool_version = "cap 0.1.0";

std::string sha256_hex(const std::string& data);

// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& data);

struct CacheIntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Command, parsed parameters and output digests; no timestamps, so identical
// runs give identical manifests.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json cutoffs = nlohmann::json::object();
  std::string output_digest;

  nlohmann::json to_json() const;
  std::string content_key() const; // digest of command, parameters and cutoffs
};

// One file per (command kind, content key) under the cache root, each with
// a manifest holding the output digest.
class Cache {
 public:
  explicit Cache(std::filesystem::path root) : root_(std::move(root)) {}
  // $CAP_CACHE_DIR, else $XDG_CACHE_HOME/cap, else ~/.cache/cap
  static std::filesystem::path default_root();

  // nullopt on a miss; throws CacheIntegrityError if the stored output does
  // not match its manifest
  std::optional<std::string> lookup(const RunManifest& m) const;
  void store(RunManifest m, const std::string& output) const;

 private:
  std::filesystem::path data_path(const RunManifest& m) const;
  std::filesystem::path manifest_path(const RunManifest& m) const;
  std::filesystem::path root_;
};

} // namespace cap

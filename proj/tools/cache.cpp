#include "cache.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace cap {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

void write_atomic(const fs::path& path, const std::string& data) {
  fs::create_directories(path.parent_path());
  std::random_device rd;
  fs::path tmp = path;
  tmp += fmt::format(".tmp{:08x}", rd());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << data;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = tool_version;
  j["command"] = command;
  j["parameters"] = parameters;
  j["cutoffs"] = cutoffs;
  j["content_key"] = content_key();
  j["output_sha256"] = output_digest;
  return j;
}

std::string RunManifest::content_key() const {
  nlohmann::json j;
  j["tool"] = tool_version;
  j["command"] = command;
  j["parameters"] = parameters;
  j["cutoffs"] = cutoffs;
  return sha256_hex(j.dump());
}

fs::path Cache::default_root() {
  if (const char* d = std::getenv("CAP_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "cap";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "cap";
  return fs::temp_directory_path() / "cap-cache";
}

fs::path Cache::data_path(const RunManifest& m) const { return root_ / m.command / (m.content_key() + ".out"); }

fs::path Cache::manifest_path(const RunManifest& m) const {
  return root_ / m.command / (m.content_key() + ".manifest.json");
}

std::optional<std::string> Cache::lookup(const RunManifest& m) const {
  fs::path data = data_path(m), man = manifest_path(m);
  if (!fs::exists(data) || !fs::exists(man)) return std::nullopt;
  std::ifstream din(data, std::ios::binary), min(man);
  std::stringstream ds, ms;
  ds << din.rdbuf();
  ms << min.rdbuf();
  nlohmann::json stored;
  try {
    stored = nlohmann::json::parse(ms.str());
  } catch (const nlohmann::json::exception&) {
    throw CacheIntegrityError("unreadable cache manifest " + man.string());
  }
  if (stored.value("output_sha256", "") != sha256_hex(ds.str()))
    throw CacheIntegrityError("cached output " + data.string() + " does not match its manifest digest");
  return ds.str();
}

void Cache::store(RunManifest m, const std::string& output) const {
  m.output_digest = sha256_hex(output);
  write_atomic(data_path(m), output);
  write_atomic(manifest_path(m), m.to_json().dump(2) + "\n");
}

} // namespace cap

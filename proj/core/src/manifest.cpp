#include "unforced/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>

#include "unforced/error.hpp"

#ifndef UNFORCED_VERSION
#define UNFORCED_VERSION "0.0.0"
#endif

namespace unforced {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": file not found or unreadable");

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCategory::runtime, "cannot initialise SHA-256");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (const auto got = in.gcount(); got > 0) {
      EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(got));
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string tool_version() { return UNFORCED_VERSION; }

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

nlohmann::json to_json(const RunManifest& m) {
  auto datasets = nlohmann::json::array();
  for (const auto& d : m.datasets) datasets.push_back({{"path", d.path}, {"sha256", d.sha256}});
  return {
      {"command", m.command},
      {"config", m.config},
      {"seed", m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr)},
      {"datasets", std::move(datasets)},
      {"tool_version", m.tool_version},
      {"timestamp", m.timestamp},
  };
}

}  // namespace unforced

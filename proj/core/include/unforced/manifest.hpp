#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace unforced {

struct DatasetFingerprint {
  std::string path;
  std::string sha256;
};

/// Everything needed to re-run a command and get the same outputs.
/// Only `timestamp` may differ between identical runs.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::vector<DatasetFingerprint> datasets;
  std::string tool_version;
  std::string timestamp;
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::string tool_version();
/// ISO-8601 UTC, seconds resolution.
std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& manifest);

}  // namespace unforced

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unforced/ingest.hpp"
#include "unforced/records.hpp"

namespace unforced {

/// Column order of the normalized serve-record CSV. `year` is empty when unknown.
inline constexpr const char* kServeRecordColumns[] = {
    "match_id",       "point_index",   "server_id",       "receiver_id", "serve_number", "is_first_serve_fault",
    "terminal_touch", "terminal_kind", "point_winner",    "error_committer", "year",     "tour",
};

void write_serve_records_csv(std::ostream& out, const std::vector<ServeRecord>& records);
std::vector<ServeRecord> read_serve_records_csv(std::istream& in, const std::string& source_name);

nlohmann::json to_json(const ServeRecord& record);
ServeRecord serve_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IngestReport& report);

/// Format picked by extension: `.json` is a JSON array, anything else CSV.
void save_serve_records(const std::filesystem::path& path, const std::vector<ServeRecord>& records);
std::vector<ServeRecord> load_serve_records(const std::filesystem::path& path);

/// Throws DataError when a record breaks a ServeRecord invariant.
void validate(const ServeRecord& record);

}  // namespace unforced

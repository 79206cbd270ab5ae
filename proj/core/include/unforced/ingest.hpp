#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unforced/records.hpp"

namespace unforced {

/// One data row of a Match Charting Project points file, uninterpreted.
struct RawPointRow {
  std::string match_id;
  int point_index = 0;
  std::string server_id;
  std::string receiver_id;
  std::string first_serve_notation;
  std::string second_serve_notation;
  std::string rally_count;
  std::string score_context;
  std::size_t source_line = 0;
  /// Filled by clean_rows.
  std::optional<long> rally_count_value;
};

/// A row that could not be decoded and was dropped.
struct IngestIssue {
  std::string match_id;
  int point_index = 0;
  std::string message;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped_bad_rally_count = 0;
  std::size_t rows_dropped_notation_error = 0;
  /// Serve slots (1 + [second serve charted]) belonging to notation-dropped rows.
  std::size_t serves_skipped_notation_error = 0;
  std::size_t serve_records_emitted = 0;
  std::size_t points_augmented_with_fault_serve = 0;
  std::vector<IngestIssue> issues;

  IngestReport& operator+=(const IngestReport& other);
};

/// match_id -> (player 1, player 2), as in the MCP `charting-*-matches.csv` files.
using PlayerDirectory = std::map<std::string, std::pair<std::string, std::string>>;

PlayerDirectory load_matches_file(const std::filesystem::path& path);

/// Reads a points file. Required columns: match_id, Pt, Svr, 1st, 2nd,
/// rallyCount. Player names come from "Player 1"/"Player 2" columns when the
/// file has them, otherwise from `players`, otherwise from the match_id
/// (`date-gender-event-round-Player_One-Player_Two`).
std::vector<RawPointRow> parse_points_file(const std::filesystem::path& path,
                                           const PlayerDirectory* players = nullptr);
std::vector<RawPointRow> parse_points_stream(std::istream& in, const std::string& source_name,
                                             const PlayerDirectory* players = nullptr);

/// Drops rows whose rallyCount is not a base-10 non-negative integer.
std::pair<std::vector<RawPointRow>, IngestReport> clean_rows(std::vector<RawPointRow> rows);

/// One record per serve: a point with a charted second serve yields the
/// first-serve fault plus the decisive second serve. Rows whose notation does
/// not decode are dropped and listed in the report.
std::pair<std::vector<ServeRecord>, IngestReport> explode_to_serves(const std::vector<RawPointRow>& rows,
                                                                    std::optional<Tour> tour_override = std::nullopt);

/// Year encoded in the leading yyyymmdd of a match id.
std::optional<int> year_from_match_id(std::string_view match_id) noexcept;
/// Tour from the gender field of a match id ("M" or "W").
Tour tour_from_match_id(std::string_view match_id) noexcept;
/// Splits `...-Player_One-Player_Two`; nullopt when the split is ambiguous.
std::optional<std::pair<std::string, std::string>> players_from_match_id(std::string_view match_id);

}  // namespace unforced

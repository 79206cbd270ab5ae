#include "unforced/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "unforced/csv.hpp"
#include "unforced/error.hpp"
#include "unforced/notation.hpp"

namespace unforced {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(sep, start);
    out.emplace_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string underscores_to_spaces(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

std::string join(const std::vector<std::string>& parts, std::size_t first, std::size_t last, char sep) {
  std::string out;
  for (std::size_t i = first; i < last; ++i) {
    if (i != first) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": file not found or unreadable");
  return in;
}

bool is_non_negative_integer(std::string_view text, long& value) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

IngestReport& IngestReport::operator+=(const IngestReport& other) {
  rows_read += other.rows_read;
  rows_dropped_bad_rally_count += other.rows_dropped_bad_rally_count;
  rows_dropped_notation_error += other.rows_dropped_notation_error;
  serves_skipped_notation_error += other.serves_skipped_notation_error;
  serve_records_emitted += other.serve_records_emitted;
  points_augmented_with_fault_serve += other.points_augmented_with_fault_serve;
  issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  return *this;
}

std::optional<int> year_from_match_id(std::string_view match_id) noexcept {
  if (match_id.size() < 8) return std::nullopt;
  for (std::size_t i = 0; i < 8; ++i) {
    if (match_id[i] < '0' || match_id[i] > '9') return std::nullopt;
  }
  int year = 0;
  std::from_chars(match_id.data(), match_id.data() + 4, year);
  return year;
}

Tour tour_from_match_id(std::string_view match_id) noexcept {
  const auto first = match_id.find('-');
  if (first == std::string_view::npos) return Tour::unknown;
  const auto second = match_id.find('-', first + 1);
  const auto gender = match_id.substr(first + 1, second - first - 1);
  if (gender == "M") return Tour::atp;
  if (gender == "W") return Tour::wta;
  return Tour::unknown;
}

std::optional<std::pair<std::string, std::string>> players_from_match_id(std::string_view match_id) {
  const auto parts = split(match_id, '-');
  if (parts.size() < 6) return std::nullopt;
  const std::size_t begin = 4;
  const std::size_t end = parts.size();
  if (end - begin == 2) {
    return std::make_pair(underscores_to_spaces(parts[begin]), underscores_to_spaces(parts[begin + 1]));
  }
  // Hyphenated names: accept the only split where both halves end in a
  // token carrying a given-name/surname underscore.
  std::optional<std::size_t> cut;
  for (std::size_t k = begin + 1; k < end; ++k) {
    if (parts[k - 1].find('_') != std::string::npos && parts[end - 1].find('_') != std::string::npos) {
      if (cut) return std::nullopt;
      cut = k;
    }
  }
  if (!cut) return std::nullopt;
  return std::make_pair(underscores_to_spaces(join(parts, begin, *cut, '-')),
                        underscores_to_spaces(join(parts, *cut, end, '-')));
}

PlayerDirectory load_matches_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  csv::Reader reader(in, path.string());
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw DataError(path.string() + ": empty file, header row expected");
  const csv::Header header(fields);
  const auto id_col = header.require("match_id", path.string());
  const auto p1_col = header.require("Player 1", path.string());
  const auto p2_col = header.require("Player 2", path.string());

  PlayerDirectory out;
  while (reader.next(fields)) {
    if (fields.size() != header.size()) {
      throw csv::CsvError(path.string(), reader.line(),
                          "expected " + std::to_string(header.size()) + " fields, found " +
                              std::to_string(fields.size()));
    }
    out[fields[id_col]] = {fields[p1_col], fields[p2_col]};
  }
  return out;
}

std::vector<RawPointRow> parse_points_file(const std::filesystem::path& path, const PlayerDirectory* players) {
  auto in = open_or_throw(path);
  return parse_points_stream(in, path.string(), players);
}

std::vector<RawPointRow> parse_points_stream(std::istream& in, const std::string& source,
                                             const PlayerDirectory* players) {
  csv::Reader reader(in, source);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw DataError(source + ": empty file, header row expected");
  const csv::Header header(fields);

  const auto id_col = header.require("match_id", source);
  const auto pt_col = header.require("Pt", source);
  const auto svr_col = header.require("Svr", source);
  const auto first_col = header.require("1st", source);
  const auto second_col = header.require("2nd", source);
  const auto rally_col = header.require("rallyCount", source);
  const auto p1_col = header.find("Player 1");
  const auto p2_col = header.find("Player 2");
  const bool inline_players = p1_col && p2_col;

  std::vector<std::optional<std::size_t>> score_cols;
  for (const char* name : {"Set1", "Set2", "Gm1", "Gm2", "Pts"}) score_cols.push_back(header.find(name));

  std::map<std::string, std::pair<std::string, std::string>> resolved;
  std::set<std::pair<std::string, int>> seen;
  std::vector<RawPointRow> rows;

  while (reader.next(fields)) {
    if (fields.size() != header.size()) {
      throw csv::CsvError(source, reader.line(),
                          "expected " + std::to_string(header.size()) + " fields, found " +
                              std::to_string(fields.size()));
    }
    RawPointRow row;
    row.source_line = reader.line();
    row.match_id = fields[id_col];

    long pt = 0;
    if (!is_non_negative_integer(fields[pt_col], pt)) {
      throw csv::CsvError(source, reader.line(), "Pt is not an integer: \"" + fields[pt_col] + "\"");
    }
    row.point_index = static_cast<int>(pt);
    if (!seen.emplace(row.match_id, row.point_index).second) {
      throw csv::CsvError(source, reader.line(),
                          "duplicate point " + row.match_id + " #" + std::to_string(row.point_index));
    }

    std::pair<std::string, std::string> names;
    if (inline_players) {
      names = {fields[*p1_col], fields[*p2_col]};
    } else if (auto it = resolved.find(row.match_id); it != resolved.end()) {
      names = it->second;
    } else {
      std::optional<std::pair<std::string, std::string>> found;
      if (players) {
        if (auto dit = players->find(row.match_id); dit != players->end()) found = dit->second;
      }
      if (!found) found = players_from_match_id(row.match_id);
      if (!found) {
        throw csv::CsvError(source, reader.line(),
                            "cannot determine players of match " + row.match_id + "; supply a matches file");
      }
      names = resolved.emplace(row.match_id, *found).first->second;
    }

    const auto& svr = fields[svr_col];
    if (svr == "1") {
      row.server_id = names.first;
      row.receiver_id = names.second;
    } else if (svr == "2") {
      row.server_id = names.second;
      row.receiver_id = names.first;
    } else {
      throw csv::CsvError(source, reader.line(), "Svr must be 1 or 2, found \"" + svr + "\"");
    }
    if (same_player(row.server_id, row.receiver_id)) {
      throw csv::CsvError(source, reader.line(), "server and receiver are the same player");
    }

    row.first_serve_notation = fields[first_col];
    row.second_serve_notation = fields[second_col];
    row.rally_count = fields[rally_col];

    std::string context;
    for (const auto& col : score_cols) {
      if (!col) continue;
      if (!context.empty()) context.push_back(' ');
      context += fields[*col];
    }
    row.score_context = std::move(context);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<std::vector<RawPointRow>, IngestReport> clean_rows(std::vector<RawPointRow> rows) {
  IngestReport report;
  report.rows_read = rows.size();
  std::vector<RawPointRow> kept;
  kept.reserve(rows.size());
  for (auto& row : rows) {
    long value = 0;
    if (!is_non_negative_integer(row.rally_count, value)) {
      ++report.rows_dropped_bad_rally_count;
      continue;
    }
    row.rally_count_value = value;
    kept.push_back(std::move(row));
  }
  return {std::move(kept), std::move(report)};
}

std::pair<std::vector<ServeRecord>, IngestReport> explode_to_serves(const std::vector<RawPointRow>& rows,
                                                                    std::optional<Tour> tour_override) {
  IngestReport report;
  std::vector<ServeRecord> out;
  out.reserve(rows.size() * 2);

  for (const auto& row : rows) {
    const bool has_second = !row.second_serve_notation.empty();
    const auto drop = [&](std::string message) {
      ++report.rows_dropped_notation_error;
      report.serves_skipped_notation_error += has_second ? 2 : 1;
      report.issues.push_back({row.match_id, row.point_index, std::move(message)});
    };

    ServeRecord base;
    base.match_id = row.match_id;
    base.point_index = row.point_index;
    base.server_id = row.server_id;
    base.receiver_id = row.receiver_id;
    base.year = year_from_match_id(row.match_id);
    base.tour = tour_override ? *tour_override : tour_from_match_id(row.match_id);

    if (row.first_serve_notation.empty()) {
      drop("first serve notation is empty");
      continue;
    }

    ShotOutcome first;
    std::optional<ShotOutcome> second;
    try {
      first = parse_shot_notation(row.first_serve_notation, 1);
      if (has_second) {
        if (first.terminal_kind != TerminalKind::first_serve_fault) {
          drop("second serve charted after a decisive first serve");
          continue;
        }
        second = parse_shot_notation(row.second_serve_notation, 2);
      } else if (first.terminal_kind == TerminalKind::first_serve_fault) {
        drop("first serve fault without a second serve");
        continue;
      }
    } catch (const NotationError& e) {
      drop(e.what());
      continue;
    }

    auto emit = [&](int serve_number, const ShotOutcome& o) {
      ServeRecord rec = base;
      rec.serve_number = serve_number;
      rec.is_first_serve_fault = o.terminal_kind == TerminalKind::first_serve_fault;
      rec.terminal_touch = o.terminal_touch;
      rec.terminal_kind = o.terminal_kind;
      rec.point_winner = o.point_winner;
      rec.error_committer = o.error_committer;
      out.push_back(std::move(rec));
    };
    emit(1, first);
    if (second) {
      emit(2, *second);
      ++report.points_augmented_with_fault_serve;
    }
  }
  report.serve_records_emitted = out.size();
  return {std::move(out), std::move(report)};
}

}  // namespace unforced

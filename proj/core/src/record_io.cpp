#include "unforced/record_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>

#include "unforced/csv.hpp"
#include "unforced/error.hpp"

namespace unforced {

namespace {

int to_int(const std::string& text, const char* column, const std::string& source, std::size_t line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw csv::CsvError(source, line, std::string(column) + " is not an integer: \"" + text + "\"");
  }
  return value;
}

template <class T>
T require_enum(std::optional<T> value, const char* column, const std::string& text, const std::string& source,
               std::size_t line) {
  if (!value) throw csv::CsvError(source, line, std::string("bad ") + column + " \"" + text + "\"");
  return *value;
}

}  // namespace

void validate(const ServeRecord& r) {
  const auto fail = [&](const char* what) {
    throw DataError("serve record " + r.match_id + " #" + std::to_string(r.point_index) + " serve " +
                    std::to_string(r.serve_number) + ": " + what);
  };
  if (r.serve_number != 1 && r.serve_number != 2) fail("serve_number must be 1 or 2");
  if (r.terminal_touch < 1) fail("terminal_touch must be >= 1");
  if (same_player(r.server_id, r.receiver_id)) fail("server and receiver are the same player");
  const bool fsf = r.terminal_kind == TerminalKind::first_serve_fault;
  if (fsf != (r.point_winner == Side::none) || fsf != r.is_first_serve_fault) {
    fail("first_serve_fault, point_winner none and is_first_serve_fault must agree");
  }
  if (fsf && r.serve_number != 1) fail("first serve fault on a second serve");
  if (r.terminal_kind == TerminalKind::forced_error || r.terminal_kind == TerminalKind::unforced_error) {
    if (r.error_committer == Side::none) fail("error without committer");
    const Side expected = r.error_committer == Side::server ? Side::receiver : Side::server;
    if (r.point_winner != expected) fail("error point must go to the committer's opponent");
  }
  if (r.terminal_kind == TerminalKind::unforced_error && r.terminal_touch < 2) fail("unforced error on the serve");
  if (r.terminal_kind == TerminalKind::double_fault &&
      (r.serve_number != 2 || r.point_winner != Side::receiver)) {
    fail("double fault must be a second serve won by the receiver");
  }
  const Side hitter = role_at_touch(r.terminal_touch) == Role::server ? Side::server : Side::receiver;
  if (r.terminal_kind == TerminalKind::rally_winner && r.point_winner != hitter) {
    fail("rally winner must go to the player who struck the terminal touch");
  }
  if (r.error_committer != Side::none) {
    if (r.error_committer != hitter) fail("error committer disagrees with terminal touch parity");
  }
}

void write_serve_records_csv(std::ostream& out, const std::vector<ServeRecord>& records) {
  csv::write_row(out, std::vector<std::string>(std::begin(kServeRecordColumns), std::end(kServeRecordColumns)));
  for (const auto& r : records) {
    csv::write_row(out, {
                            r.match_id,
                            std::to_string(r.point_index),
                            r.server_id,
                            r.receiver_id,
                            std::to_string(r.serve_number),
                            r.is_first_serve_fault ? "1" : "0",
                            std::to_string(r.terminal_touch),
                            std::string(to_string(r.terminal_kind)),
                            std::string(to_string(r.point_winner)),
                            std::string(to_string(r.error_committer)),
                            r.year ? std::to_string(*r.year) : std::string(),
                            std::string(to_string(r.tour)),
                        });
  }
}

std::vector<ServeRecord> read_serve_records_csv(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  std::vector<std::string> f;
  if (!reader.next(f)) throw DataError(source + ": empty file, header row expected");
  const csv::Header header(f);
  std::size_t cols[std::size(kServeRecordColumns)];
  for (std::size_t i = 0; i < std::size(kServeRecordColumns); ++i) {
    cols[i] = header.require(kServeRecordColumns[i], source);
  }

  std::vector<ServeRecord> out;
  while (reader.next(f)) {
    const auto line = reader.line();
    if (f.size() != header.size()) {
      throw csv::CsvError(source, line,
                          "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(f.size()));
    }
    ServeRecord r;
    r.match_id = f[cols[0]];
    r.point_index = to_int(f[cols[1]], "point_index", source, line);
    r.server_id = f[cols[2]];
    r.receiver_id = f[cols[3]];
    r.serve_number = to_int(f[cols[4]], "serve_number", source, line);
    const auto& fsf = f[cols[5]];
    if (fsf != "0" && fsf != "1") throw csv::CsvError(source, line, "is_first_serve_fault must be 0 or 1");
    r.is_first_serve_fault = fsf == "1";
    r.terminal_touch = to_int(f[cols[6]], "terminal_touch", source, line);
    r.terminal_kind = require_enum(parse_terminal_kind(f[cols[7]]), "terminal_kind", f[cols[7]], source, line);
    r.point_winner = require_enum(parse_side(f[cols[8]]), "point_winner", f[cols[8]], source, line);
    r.error_committer = require_enum(parse_side(f[cols[9]]), "error_committer", f[cols[9]], source, line);
    if (!f[cols[10]].empty()) r.year = to_int(f[cols[10]], "year", source, line);
    r.tour = require_enum(parse_tour(f[cols[11]]), "tour", f[cols[11]], source, line);
    try {
      validate(r);
    } catch (const DataError& e) {
      throw csv::CsvError(source, line, e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const ServeRecord& r) {
  return {
      {"match_id", r.match_id},
      {"point_index", r.point_index},
      {"server_id", r.server_id},
      {"receiver_id", r.receiver_id},
      {"serve_number", r.serve_number},
      {"is_first_serve_fault", r.is_first_serve_fault},
      {"terminal_touch", r.terminal_touch},
      {"terminal_kind", to_string(r.terminal_kind)},
      {"point_winner", to_string(r.point_winner)},
      {"error_committer", to_string(r.error_committer)},
      {"year", r.year ? nlohmann::json(*r.year) : nlohmann::json(nullptr)},
      {"tour", to_string(r.tour)},
  };
}

ServeRecord serve_record_from_json(const nlohmann::json& j) {
  ServeRecord r;
  try {
    r.match_id = j.at("match_id").get<std::string>();
    r.point_index = j.at("point_index").get<int>();
    r.server_id = j.at("server_id").get<std::string>();
    r.receiver_id = j.at("receiver_id").get<std::string>();
    r.serve_number = j.at("serve_number").get<int>();
    r.is_first_serve_fault = j.at("is_first_serve_fault").get<bool>();
    r.terminal_touch = j.at("terminal_touch").get<int>();
    const auto kind = j.at("terminal_kind").get<std::string>();
    const auto winner = j.at("point_winner").get<std::string>();
    const auto committer = j.at("error_committer").get<std::string>();
    const auto tour = j.at("tour").get<std::string>();
    auto k = parse_terminal_kind(kind);
    auto w = parse_side(winner);
    auto c = parse_side(committer);
    auto t = parse_tour(tour);
    if (!k || !w || !c || !t) throw DataError("bad enumeration value in serve record JSON");
    r.terminal_kind = *k;
    r.point_winner = *w;
    r.error_committer = *c;
    r.tour = *t;
    if (!j.at("year").is_null()) r.year = j.at("year").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed serve record JSON: ") + e.what());
  }
  validate(r);
  return r;
}

nlohmann::json to_json(const IngestReport& report) {
  auto issues = nlohmann::json::array();
  for (const auto& issue : report.issues) {
    issues.push_back({{"match_id", issue.match_id}, {"point_index", issue.point_index}, {"message", issue.message}});
  }
  return {
      {"rows_read", report.rows_read},
      {"rows_dropped_bad_rally_count", report.rows_dropped_bad_rally_count},
      {"rows_dropped_notation_error", report.rows_dropped_notation_error},
      {"serves_skipped_notation_error", report.serves_skipped_notation_error},
      {"serve_records_emitted", report.serve_records_emitted},
      {"points_augmented_with_fault_serve", report.points_augmented_with_fault_serve},
      {"issues", std::move(issues)},
  };
}

void save_serve_records(const std::filesystem::path& path, const std::vector<ServeRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot open for writing");
  if (path.extension() == ".json") {
    auto arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    out << arr.dump(1) << '\n';
  } else {
    write_serve_records_csv(out, records);
  }
  if (!out) throw DataError(path.string() + ": write failed");
}

std::vector<ServeRecord> load_serve_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": file not found or unreadable");
  if (path.extension() == ".json") {
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ": " + e.what());
    }
    if (!arr.is_array()) throw DataError(path.string() + ": expected a JSON array of serve records");
    std::vector<ServeRecord> out;
    out.reserve(arr.size());
    for (const auto& j : arr) out.push_back(serve_record_from_json(j));
    return out;
  }
  return read_serve_records_csv(in, path.string());
}

}  // namespace unforced

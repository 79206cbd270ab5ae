#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "unforced/csv.hpp"
#include "unforced/ingest.hpp"
#include "unforced/notation.hpp"
#include "unforced/record_io.hpp"

using namespace unforced;
namespace fs = std::filesystem;

namespace {

const fs::path kPoints = fs::path(unforced::testing::kDataDir) / "synthetic_points.csv";
constexpr const char* kMensMatch = "20210705-M-Wimbledon-R16-Alex_Moreau-Ben_Carter";
constexpr const char* kWomensMatch = "20210706-W-Wimbledon-QF-Anna-Lena_Brandt-Clara_Diaz";

struct Pipeline {
  std::vector<RawPointRow> raw;
  std::vector<ServeRecord> records;
  IngestReport report;
};

Pipeline run(const fs::path& path) {
  Pipeline p;
  p.raw = parse_points_file(path);
  auto [clean, report] = clean_rows(p.raw);
  auto [records, serve_report] = explode_to_serves(clean);
  report += serve_report;
  p.records = std::move(records);
  p.report = std::move(report);
  return p;
}

}  // namespace

TEST_CASE("fixture counts") {
  const auto p = run(kPoints);
  CHECK(p.raw.size() == 238);
  CHECK(std::count_if(p.raw.begin(), p.raw.end(), [](const auto& r) { return r.match_id == kMensMatch; }) == 142);
  CHECK(std::count_if(p.raw.begin(), p.raw.end(), [](const auto& r) { return r.match_id == kWomensMatch; }) == 96);
  CHECK(p.report.rows_read == 238);
  CHECK(p.report.rows_dropped_bad_rally_count == 2);
  CHECK(p.report.rows_dropped_notation_error == 1);
  CHECK(p.report.serves_skipped_notation_error == 1);
  CHECK(p.report.serve_records_emitted == 309);
  CHECK(p.report.points_augmented_with_fault_serve == 74);
  CHECK(p.records.size() == 309);
  REQUIRE(p.report.issues.size() == 1);
  CHECK(p.report.issues[0].match_id == kMensMatch);
  CHECK(p.report.issues[0].point_index == 41);

  const auto count_kind = [&](TerminalKind k) {
    return std::count_if(p.records.begin(), p.records.end(), [&](const auto& r) { return r.terminal_kind == k; });
  };
  CHECK(count_kind(TerminalKind::double_fault) == 4);
  CHECK(count_kind(TerminalKind::unforced_error) == 89);
  CHECK(count_kind(TerminalKind::first_serve_fault) == 74);
}

TEST_CASE("serve slots reconcile with the report") {
  const auto p = run(kPoints);
  const auto& r = p.report;
  const auto kept_points = r.rows_read - r.rows_dropped_bad_rally_count - r.rows_dropped_notation_error;
  CHECK(r.serve_records_emitted == kept_points + r.points_augmented_with_fault_serve);
  CHECK(r.serve_records_emitted + r.serves_skipped_notation_error >= r.rows_read - r.rows_dropped_bad_rally_count);
}

TEST_CASE("records carry names, tour, year and valid invariants") {
  const auto p = run(kPoints);
  for (const auto& rec : p.records) {
    CHECK_NOTHROW(validate(rec));
    REQUIRE(rec.year.has_value());
    CHECK(*rec.year == 2021);
  }
  const auto mens = std::find_if(p.records.begin(), p.records.end(), [](const auto& r) { return r.match_id == kMensMatch; });
  REQUIRE(mens != p.records.end());
  CHECK(mens->tour == Tour::atp);
  const bool names_ok = (mens->server_id == "Alex Moreau" && mens->receiver_id == "Ben Carter") ||
                        (mens->server_id == "Ben Carter" && mens->receiver_id == "Alex Moreau");
  CHECK(names_ok);
  const auto womens = std::find_if(p.records.begin(), p.records.end(), [](const auto& r) { return r.match_id == kWomensMatch; });
  REQUIRE(womens != p.records.end());
  CHECK(womens->tour == Tour::wta);
  CHECK((womens->server_id == "Anna-Lena Brandt" || womens->receiver_id == "Anna-Lena Brandt"));
}

TEST_CASE("second serve of a point follows its first-serve fault") {
  const auto p = run(kPoints);
  for (std::size_t i = 0; i < p.records.size(); ++i) {
    const auto& r = p.records[i];
    if (r.serve_number != 2) continue;
    REQUIRE(i > 0);
    const auto& prev = p.records[i - 1];
    CHECK(prev.match_id == r.match_id);
    CHECK(prev.point_index == r.point_index);
    CHECK(prev.is_first_serve_fault);
  }
}

TEST_CASE("ingest is deterministic") {
  const auto a = run(kPoints);
  const auto b = run(kPoints);
  CHECK(a.records == b.records);
}

TEST_CASE("missing required column is named") {
  std::istringstream in("match_id,Pt,Svr,1st,2nd\nx-M-e-r-A_B-C_D,1,1,6*,,\n");
  try {
    parse_points_stream(in, "mem.csv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("rallyCount") != std::string::npos);
  }
}

TEST_CASE("missing file is a data error") {
  CHECK_THROWS_AS(parse_points_file("/nonexistent/points.csv"), DataError);
}

TEST_CASE("unterminated quote reports a line") {
  std::istringstream in("match_id,Pt,Svr,1st,2nd,rallyCount\n\"20200101-M-e-r-A_B-C_D,1,1,6*,,1\n");
  CHECK_THROWS_AS(parse_points_stream(in, "mem.csv"), DataError);
}

TEST_CASE("duplicate points and bad server codes are rejected") {
  std::istringstream dup(
      "match_id,Pt,Svr,1st,2nd,rallyCount\n"
      "20200101-M-e-r-Al_B-Cy_D,1,1,6*,,1\n"
      "20200101-M-e-r-Al_B-Cy_D,1,2,6*,,1\n");
  CHECK_THROWS_AS(parse_points_stream(dup, "dup.csv"), DataError);
  std::istringstream svr(
      "match_id,Pt,Svr,1st,2nd,rallyCount\n"
      "20200101-M-e-r-Al_B-Cy_D,1,3,6*,,1\n");
  CHECK_THROWS_AS(parse_points_stream(svr, "svr.csv"), DataError);
}

TEST_CASE("rally count cleaning") {
  std::istringstream in(
      "match_id,Pt,Svr,1st,2nd,rallyCount\n"
      "20200101-M-e-r-Al_B-Cy_D,1,1,6*,,1\n"
      "20200101-M-e-r-Al_B-Cy_D,2,1,6*,,-1\n"
      "20200101-M-e-r-Al_B-Cy_D,3,1,6*,,1.5\n"
      "20200101-M-e-r-Al_B-Cy_D,4,1,6*,,\n"
      "20200101-M-e-r-Al_B-Cy_D,5,2,6*,,12\n");
  auto [rows, report] = clean_rows(parse_points_stream(in, "mem.csv"));
  CHECK(rows.size() == 2);
  CHECK(report.rows_dropped_bad_rally_count == 3);
  REQUIRE(rows[1].rally_count_value.has_value());
  CHECK(*rows[1].rally_count_value == 12);
}

TEST_CASE("inline player columns and a matches directory take precedence") {
  std::istringstream in(
      "match_id,Player 1,Player 2,Pt,Svr,1st,2nd,rallyCount\n"
      "20200101-M-e-r-Al_B-Cy_D,Roger X,Rafa Y,1,2,6*,,1\n");
  const auto rows = parse_points_stream(in, "mem.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].server_id == "Rafa Y");
  CHECK(rows[0].receiver_id == "Roger X");

  PlayerDirectory dir{{"20200101-M-e-r-Al_B-Cy_D", {"P One", "P Two"}}};
  std::istringstream in2("match_id,Pt,Svr,1st,2nd,rallyCount\n20200101-M-e-r-Al_B-Cy_D,1,1,6*,,1\n");
  const auto rows2 = parse_points_stream(in2, "mem.csv", &dir);
  CHECK(rows2[0].server_id == "P One");
  CHECK(rows2[0].receiver_id == "P Two");
}

TEST_CASE("exploding rows") {
  std::istringstream in(
      "match_id,Pt,Svr,1st,2nd,rallyCount\n"
      "20200101-W-e-r-Al_B-Cy_D,1,1,6n,5f1n@,2\n"   // fault then a receiver UFE
      "20200101-W-e-r-Al_B-Cy_D,2,1,6*,4*,1\n"      // second serve after a decisive first
      "20200101-W-e-r-Al_B-Cy_D,3,2,6n,,1\n"        // fault without a second serve
      "20200101-W-e-r-Al_B-Cy_D,4,2,6n,6d,1\n");    // double fault
  auto [rows, r1] = clean_rows(parse_points_stream(in, "mem.csv"));
  auto [records, r2] = explode_to_serves(rows);
  CHECK(records.size() == 4);
  CHECK(r2.rows_dropped_notation_error == 2);
  CHECK(records[1].terminal_kind == TerminalKind::unforced_error);
  CHECK(records[1].error_committer == Side::receiver);
  CHECK(records[1].tour == Tour::wta);
  CHECK(records[3].terminal_kind == TerminalKind::double_fault);
  CHECK(records[3].server_id == "Cy D");

  auto [atp, r3] = explode_to_serves(rows, Tour::atp);
  CHECK(atp[0].tour == Tour::atp);
}

TEST_CASE("match id helpers") {
  CHECK(year_from_match_id("20190708-M-Wimbledon-R16-A_B-C_D") == 2019);
  CHECK_FALSE(year_from_match_id("x2019").has_value());
  CHECK(tour_from_match_id("20190708-M-Wimbledon-R16-A_B-C_D") == Tour::atp);
  CHECK(tour_from_match_id("20190708-W-Wimbledon-R16-A_B-C_D") == Tour::wta);
  CHECK(tour_from_match_id("garbage") == Tour::unknown);

  const auto simple = players_from_match_id("20190708-M-Wimbledon-R16-Novak_Djokovic-Roger_Federer");
  REQUIRE(simple.has_value());
  CHECK(simple->first == "Novak Djokovic");
  CHECK(simple->second == "Roger Federer");

  const auto hyphen = players_from_match_id("20190708-W-Wimbledon-R16-Anna-Lena_Friedsam-Jo_Konta");
  REQUIRE(hyphen.has_value());
  CHECK(hyphen->first == "Anna-Lena Friedsam");
  CHECK(hyphen->second == "Jo Konta");

  const auto trailing = players_from_match_id("20190708-W-Wimbledon-R16-Jo_Konta-Anna-Lena_Friedsam");
  REQUIRE(trailing.has_value());
  CHECK(trailing->first == "Jo Konta");
  CHECK(trailing->second == "Anna-Lena Friedsam");
}

TEST_CASE("csv and json round trips preserve records") {
  const auto p = run(kPoints);
  std::ostringstream out;
  write_serve_records_csv(out, p.records);
  std::istringstream in(out.str());
  CHECK(read_serve_records_csv(in, "mem.csv") == p.records);

  for (const auto& r : p.records) CHECK(serve_record_from_json(to_json(r)) == r);

  const auto dir = fs::temp_directory_path() / "unforced_ingest_test";
  fs::create_directories(dir);
  save_serve_records(dir / "records.json", p.records);
  save_serve_records(dir / "records.csv", p.records);
  CHECK(load_serve_records(dir / "records.json") == p.records);
  CHECK(load_serve_records(dir / "records.csv") == p.records);
  fs::remove_all(dir);
}

TEST_CASE("random row order does not change per-row decoding") {
  auto rows = parse_points_file(kPoints);
  auto [clean, rep] = clean_rows(rows);
  auto [baseline, rep2] = explode_to_serves(clean);
  std::mt19937 gen(7);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = clean;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    auto [records, rep3] = explode_to_serves(shuffled);
    CHECK(records.size() == baseline.size());
    auto key = [](const ServeRecord& r) { return std::tie(r.match_id, r.point_index, r.serve_number); };
    auto sorted = records;
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    auto base_sorted = baseline;
    std::sort(base_sorted.begin(), base_sorted.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    CHECK(sorted == base_sorted);
  }
}

TEST_CASE("csv reader handles quoting") {
  std::istringstream in("\xEF\xBB\xBF" "a,b\r\n\"x,1\",\"multi\nline\"\r\n\r\n\"q\"\"q\",z\n");
  csv::Reader reader(in, "mem.csv");
  std::vector<std::string> row;
  REQUIRE(reader.next(row));
  CHECK(row == std::vector<std::string>{"a", "b"});
  REQUIRE(reader.next(row));
  CHECK(row == std::vector<std::string>{"x,1", "multi\nline"});
  REQUIRE(reader.next(row));
  CHECK(row == std::vector<std::string>{"q\"q", "z"});
  CHECK_FALSE(reader.next(row));
}

#include "doctest.h"

#include <filesystem>
#include <numeric>

#include "fixtures.hpp"
#include "unforced/analytics.hpp"
#include "unforced/error.hpp"
#include "unforced/ingest.hpp"

using namespace unforced;
using unforced::testing::kPlayerA;
using unforced::testing::kPlayerB;
using unforced::testing::make_record;

namespace {

std::vector<ServeRecord> fixture_records() {
  auto [rows, r1] = clean_rows(parse_points_file(std::filesystem::path(unforced::testing::kDataDir) /
                                                 "synthetic_points.csv"));
  return explode_to_serves(rows).first;
}

}  // namespace

TEST_CASE("touch exposure") {
  CHECK(touch_exposure(1) == TouchExposure{1, 0});
  CHECK(touch_exposure(2) == TouchExposure{1, 1});
  CHECK(touch_exposure(5) == TouchExposure{3, 2});
  CHECK(touch_exposure(6) == TouchExposure{3, 3});
  CHECK_THROWS_AS(touch_exposure(0), UsageError);
  for (int t = 1; t < 40; ++t) {
    const auto e = touch_exposure(t);
    CHECK(e.server_contacts + e.receiver_contacts == t);
  }
}

TEST_CASE("ten errors over a hundred contacts") {
  std::vector<ServeRecord> rs;
  for (int i = 0; i < 10; ++i) rs.push_back(make_record(kPlayerA, kPlayerB, 1, TerminalKind::unforced_error, 3));
  for (int i = 0; i < 80; ++i) rs.push_back(make_record(kPlayerA, kPlayerB, 1, TerminalKind::ace, 1));
  // Faults are not contacts.
  for (int i = 0; i < 5; ++i) rs.push_back(make_record(kPlayerA, kPlayerB, 1, TerminalKind::first_serve_fault, 1));
  const auto p = player_ufe_rate(rs, kPlayerA);
  CHECK(p.ball_contacts == 100);
  CHECK(p.unforced_errors == 10);
  CHECK(p.ufe_rate == doctest::Approx(0.10));
  CHECK(p.matches_played == 1);
  const auto b = player_ufe_rate(rs, "ben_carter");
  CHECK(b.ball_contacts == 10);
  CHECK(b.ufe_rate == 0.0);
  CHECK_THROWS_AS(player_ufe_rate(rs, "Nobody Here"), DataError);
}

TEST_CASE("double faults are not unforced errors") {
  std::vector<ServeRecord> rs{make_record(kPlayerA, kPlayerB, 2, TerminalKind::double_fault),
                              make_record(kPlayerA, kPlayerB, 1, TerminalKind::ace)};
  const auto p = player_ufe_rate(rs, kPlayerA);
  CHECK(p.unforced_errors == 0);
  CHECK(p.ball_contacts == 2);
}

TEST_CASE("conditional rate by touch") {
  std::vector<ServeRecord> rs{make_record(kPlayerA, kPlayerB, 1, TerminalKind::unforced_error, 3),
                              make_record(kPlayerA, kPlayerB, 1, TerminalKind::rally_winner, 5)};
  const auto server = ufe_rate_by_touch(rs, std::nullopt, Role::server, 13);
  REQUIRE(server.size() == 2);
  CHECK(server[0].touch == 3);
  CHECK(server[0].rallies_reaching == 2);
  CHECK(server[0].rate == doctest::Approx(0.5));
  CHECK(server[1].touch == 5);
  CHECK(server[1].rate == 0.0);
  const auto receiver = ufe_rate_by_touch(rs, std::nullopt, Role::receiver, 13);
  REQUIRE(receiver.size() == 2);
  CHECK(receiver[0].touch == 2);
  CHECK(receiver[0].rallies_reaching == 2);
  CHECK(ufe_rate_by_touch(rs, std::nullopt, Role::server, 2).empty());
}

TEST_CASE("empty corpus") {
  const std::vector<ServeRecord> none;
  CHECK(player_profiles(none).empty());
  CHECK(ufe_rate_by_touch(none, std::nullopt, Role::server, 13).empty());
  CHECK(ufe_rate_by_year(none, std::nullopt).empty());
  CHECK(tour_ufe_rate(none, std::nullopt).rate == 0.0);
  CHECK(ufe_termination_share(none, std::nullopt) == 0.0);
  CHECK(rate_rankings({}, 10, 5).lowest.empty());
}

TEST_CASE("rankings") {
  std::vector<PlayerUfeProfile> ps(4);
  ps[0] = {"Zed", 12, 100, 5, 0.05, {}, {}};
  ps[1] = {"Amy", 20, 100, 5, 0.05, {}, {}};
  ps[2] = {"Bob", 15, 100, 9, 0.09, {}, {}};
  ps[3] = {"Cat", 3, 100, 1, 0.01, {}, {}};
  const auto r = rate_rankings(ps, 10, 2);
  REQUIRE(r.lowest.size() == 2);
  CHECK(r.lowest[0].player_id == "Amy");  // more matches wins the tie
  CHECK(r.lowest[1].player_id == "Zed");
  CHECK(r.highest[0].player_id == "Bob");
  const auto all = rate_rankings(ps, 0, 10);
  CHECK(all.lowest.size() == 4);
  CHECK(all.lowest[0].player_id == "Cat");
}

TEST_CASE("histogram") {
  std::vector<PlayerUfeProfile> ps(3);
  ps[0].ufe_rate = 0.004;
  ps[1].ufe_rate = 0.051;
  ps[2].ufe_rate = 0.5;
  const auto h = rate_histogram(ps);
  CHECK(h.size() == 40);
  CHECK(h[0].count == 1);
  CHECK(h[10].count == 1);
  CHECK(h.back().count == 1);
  std::size_t total = 0;
  for (const auto& b : h) total += b.count;
  CHECK(total == 3);
  CHECK_THROWS_AS(rate_histogram(ps, 0.0), UsageError);
}

TEST_CASE("kendall tau") {
  std::vector<YearRatePoint> up{{2018, 0, 0, 0.01}, {2019, 0, 0, 0.02}, {2020, 0, 0, 0.03}};
  CHECK(kendall_tau(up) == doctest::Approx(1.0));
  std::vector<YearRatePoint> down{{2018, 0, 0, 0.03}, {2019, 0, 0, 0.02}, {2020, 0, 0, 0.01}};
  CHECK(kendall_tau(down) == doctest::Approx(-1.0));
}

TEST_CASE("fixture aggregates are consistent") {
  const auto rs = fixture_records();
  const auto profiles = player_profiles(rs);
  CHECK(profiles.size() == 4);
  std::size_t contacts = 0;
  std::size_t errors = 0;
  for (const auto& p : profiles) {
    contacts += p.ball_contacts;
    errors += p.unforced_errors;
  }
  const auto tour = tour_ufe_rate(rs, std::nullopt);
  CHECK(contacts == tour.ball_contacts);
  CHECK(errors == tour.unforced_errors);
  CHECK(errors == 89);

  const auto atp = tour_ufe_rate(rs, Tour::atp);
  const auto wta = tour_ufe_rate(rs, Tour::wta);
  CHECK(atp.ball_contacts + wta.ball_contacts == tour.ball_contacts);

  const auto br = termination_breakdown(rs, std::nullopt);
  double share_sum = 0.0;
  std::size_t count_sum = 0;
  for (const auto& [kind, n] : br.counts) {
    share_sum += br.share(kind);
    count_sum += n;
  }
  CHECK(share_sum == doctest::Approx(1.0));
  CHECK(count_sum == br.decisive_serves);
  CHECK(br.decisive_serves == 309 - 74);
  CHECK(ufe_termination_share(rs, std::nullopt) == doctest::Approx(89.0 / 235.0));

  const auto years = ufe_rate_by_year(rs, std::nullopt);
  REQUIRE(years.size() == 1);
  CHECK(years[0].year == 2021);
  CHECK(years[0].ball_contacts == tour.ball_contacts);
}

TEST_CASE("tour filter") {
  const auto rs = fixture_records();
  const auto wta = player_profiles(rs, Tour::wta);
  CHECK(wta.size() == 2);
  for (const auto& p : wta) CHECK(p.matches_played == 1);
}

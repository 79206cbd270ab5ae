#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unforced/records.hpp"

namespace unforced {

/// Ball contacts by each side in a rally of t* touches.
struct TouchExposure {
  int server_contacts = 0;
  int receiver_contacts = 0;

  friend bool operator==(const TouchExposure&, const TouchExposure&) = default;
};

/// t* odd: server (t*+1)/2, receiver (t*-1)/2. t* even: t*/2 each.
/// Throws UsageError for t* < 1.
TouchExposure touch_exposure(int t_star);

/// nullopt means "all tours".
using TourFilter = std::optional<Tour>;

struct PlayerUfeProfile {
  std::string player_id;
  std::size_t matches_played = 0;
  std::size_t ball_contacts = 0;
  std::size_t unforced_errors = 0;
  double ufe_rate = 0.0;
  /// (role, touch) -> unforced errors at that touch / rallies reaching it.
  std::map<std::pair<Role, int>, double> per_touch_rates;
  /// Only records with a known year.
  std::map<int, double> per_year_rates;
};

/// Numerator: the player's unforced errors. Denominator: the player's ball
/// contacts over every decisive serve they took part in (first-serve faults
/// excluded; a double fault is one server contact). Throws DataError when the
/// player has no decisive records.
PlayerUfeProfile player_ufe_rate(std::span<const ServeRecord> records, std::string_view player_id,
                                 TourFilter tour = std::nullopt);

/// Profiles for every player in the corpus, in first-appearance order.
std::vector<PlayerUfeProfile> player_profiles(std::span<const ServeRecord> records, TourFilter tour = std::nullopt);

struct TouchRatePoint {
  int touch = 0;
  std::size_t rallies_reaching = 0;
  std::size_t unforced_errors = 0;
  double rate = 0.0;
};

/// Rate at touch t for the side that strikes touch t (server on odd t >= 3,
/// receiver on even t >= 2). Touches no rally reached are omitted.
std::vector<TouchRatePoint> ufe_rate_by_touch(std::span<const ServeRecord> records, TourFilter tour, Role role,
                                              int max_touch);

struct YearRatePoint {
  int year = 0;
  std::size_t ball_contacts = 0;
  std::size_t unforced_errors = 0;
  double rate = 0.0;
};

/// All-player unforced errors / ball contacts per calendar year; unknown years skipped.
std::vector<YearRatePoint> ufe_rate_by_year(std::span<const ServeRecord> records, TourFilter tour);

struct TourRate {
  std::size_t ball_contacts = 0;
  std::size_t unforced_errors = 0;
  double rate = 0.0;
};
TourRate tour_ufe_rate(std::span<const ServeRecord> records, TourFilter tour);

/// Share of decisive serves whose point ended in an unforced error.
double ufe_termination_share(std::span<const ServeRecord> records, TourFilter tour);

/// Counts of each terminal kind over decisive serves.
struct TerminationBreakdown {
  std::size_t decisive_serves = 0;
  std::map<TerminalKind, std::size_t> counts;

  double share(TerminalKind kind) const noexcept;
};
TerminationBreakdown termination_breakdown(std::span<const ServeRecord> records, TourFilter tour);

struct Rankings {
  std::vector<PlayerUfeProfile> lowest;
  std::vector<PlayerUfeProfile> highest;
};

/// Keeps players with at least `min_matches` charted matches. Ties on rate go
/// to more matches played, then to the lexicographically smaller id.
Rankings rate_rankings(std::vector<PlayerUfeProfile> profiles, std::size_t min_matches, std::size_t k);

struct HistogramBin {
  double lower_pct = 0.0;
  double upper_pct = 0.0;
  std::size_t count = 0;
};

/// Player rates in percent, bins [lo, lo + width). Rates at or above `max_pct`
/// land in the last bin.
std::vector<HistogramBin> rate_histogram(std::span<const PlayerUfeProfile> profiles, double bin_width_pct = 0.5,
                                         double max_pct = 20.0);

/// Kendall tau-a between year and rate; 0 for fewer than two points.
double kendall_tau(std::span<const YearRatePoint> series);

}  // namespace unforced

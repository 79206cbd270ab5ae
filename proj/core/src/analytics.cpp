#include "unforced/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "unforced/error.hpp"

namespace unforced {

namespace {

bool passes(const ServeRecord& r, TourFilter tour) noexcept { return !tour || r.tour == *tour; }

double ratio(std::size_t num, std::size_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

bool is_ufe_by(const ServeRecord& r, Role role) noexcept {
  if (r.terminal_kind != TerminalKind::unforced_error) return false;
  return r.error_committer == (role == Role::server ? Side::server : Side::receiver);
}

int contacts_of(const ServeRecord& r, Role role) {
  const auto e = touch_exposure(r.terminal_touch);
  return role == Role::server ? e.server_contacts : e.receiver_contacts;
}

// Per-player accumulator keyed by normalized name.
struct Tally {
  std::string display;
  std::set<std::string> matches;
  std::size_t contacts = 0;
  std::size_t ufes = 0;
  std::map<std::pair<Role, int>, std::pair<std::size_t, std::size_t>> by_touch;  // (ufes, reaching)
  std::map<int, std::pair<std::size_t, std::size_t>> by_year;                    // (ufes, contacts)

  void add(const ServeRecord& r, Role role) {
    matches.insert(r.match_id);
    if (!r.decisive()) return;
    const auto c = static_cast<std::size_t>(contacts_of(r, role));
    const bool ufe = is_ufe_by(r, role);
    contacts += c;
    ufes += ufe ? 1 : 0;
    for (int t = 2; t <= r.terminal_touch; ++t) {
      if (role_at_touch(t) != role) continue;
      auto& cell = by_touch[{role, t}];
      ++cell.second;
      if (ufe && t == r.terminal_touch) ++cell.first;
    }
    if (r.year) {
      auto& cell = by_year[*r.year];
      cell.first += ufe ? 1 : 0;
      cell.second += c;
    }
  }

  PlayerUfeProfile profile() const {
    PlayerUfeProfile p;
    p.player_id = display;
    p.matches_played = matches.size();
    p.ball_contacts = contacts;
    p.unforced_errors = ufes;
    p.ufe_rate = ratio(ufes, contacts);
    for (const auto& [key, cell] : by_touch) p.per_touch_rates[key] = ratio(cell.first, cell.second);
    for (const auto& [year, cell] : by_year) p.per_year_rates[year] = ratio(cell.first, cell.second);
    return p;
  }
};

}  // namespace

TouchExposure touch_exposure(int t_star) {
  if (t_star < 1) throw UsageError("terminal touch must be at least 1");
  if (t_star % 2 == 1) return {(t_star + 1) / 2, (t_star - 1) / 2};
  return {t_star / 2, t_star / 2};
}

PlayerUfeProfile player_ufe_rate(std::span<const ServeRecord> records, std::string_view player_id, TourFilter tour) {
  const auto key = normalize_player_name(player_id);
  Tally tally;
  bool any_decisive = false;
  for (const auto& r : records) {
    if (!passes(r, tour)) continue;
    std::optional<Role> role;
    if (normalize_player_name(r.server_id) == key) {
      role = Role::server;
      if (tally.display.empty()) tally.display = r.server_id;
    } else if (normalize_player_name(r.receiver_id) == key) {
      role = Role::receiver;
      if (tally.display.empty()) tally.display = r.receiver_id;
    }
    if (!role) continue;
    any_decisive = any_decisive || r.decisive();
    tally.add(r, *role);
  }
  if (!any_decisive) throw DataError("player not found: \"" + std::string(player_id) + "\"");
  return tally.profile();
}

std::vector<PlayerUfeProfile> player_profiles(std::span<const ServeRecord> records, TourFilter tour) {
  std::vector<Tally> tallies;
  std::unordered_map<std::string, std::size_t> slot;
  const auto tally_for = [&](const std::string& name) -> Tally& {
    auto [it, inserted] = slot.emplace(normalize_player_name(name), tallies.size());
    if (inserted) {
      tallies.emplace_back();
      tallies.back().display = name;
    }
    return tallies[it->second];
  };
  for (const auto& r : records) {
    if (!passes(r, tour)) continue;
    tally_for(r.server_id).add(r, Role::server);
    tally_for(r.receiver_id).add(r, Role::receiver);
  }
  std::vector<PlayerUfeProfile> out;
  out.reserve(tallies.size());
  for (const auto& t : tallies) out.push_back(t.profile());
  return out;
}

std::vector<TouchRatePoint> ufe_rate_by_touch(std::span<const ServeRecord> records, TourFilter tour, Role role,
                                              int max_touch) {
  const int start = role == Role::server ? 3 : 2;
  if (max_touch < start) return {};
  std::vector<std::size_t> reaching(static_cast<std::size_t>(max_touch) + 1, 0);
  std::vector<std::size_t> errors(static_cast<std::size_t>(max_touch) + 1, 0);
  for (const auto& r : records) {
    if (!passes(r, tour) || !r.decisive()) continue;
    const int last = std::min(r.terminal_touch, max_touch);
    for (int t = start; t <= last; t += 2) ++reaching[static_cast<std::size_t>(t)];
    if (r.terminal_touch <= max_touch && r.terminal_touch >= start && is_ufe_by(r, role)) {
      ++errors[static_cast<std::size_t>(r.terminal_touch)];
    }
  }
  std::vector<TouchRatePoint> out;
  for (int t = start; t <= max_touch; t += 2) {
    const auto n = reaching[static_cast<std::size_t>(t)];
    if (n == 0) continue;
    const auto e = errors[static_cast<std::size_t>(t)];
    out.push_back({t, n, e, ratio(e, n)});
  }
  return out;
}

std::vector<YearRatePoint> ufe_rate_by_year(std::span<const ServeRecord> records, TourFilter tour) {
  std::map<int, YearRatePoint> years;
  for (const auto& r : records) {
    if (!passes(r, tour) || !r.decisive() || !r.year) continue;
    auto& y = years[*r.year];
    y.year = *r.year;
    y.ball_contacts += static_cast<std::size_t>(r.terminal_touch);
    y.unforced_errors += r.terminal_kind == TerminalKind::unforced_error ? 1 : 0;
  }
  std::vector<YearRatePoint> out;
  out.reserve(years.size());
  for (auto& [year, point] : years) {
    point.rate = ratio(point.unforced_errors, point.ball_contacts);
    out.push_back(point);
  }
  return out;
}

TourRate tour_ufe_rate(std::span<const ServeRecord> records, TourFilter tour) {
  TourRate out;
  for (const auto& r : records) {
    if (!passes(r, tour) || !r.decisive()) continue;
    out.ball_contacts += static_cast<std::size_t>(r.terminal_touch);
    out.unforced_errors += r.terminal_kind == TerminalKind::unforced_error ? 1 : 0;
  }
  out.rate = ratio(out.unforced_errors, out.ball_contacts);
  return out;
}

double TerminationBreakdown::share(TerminalKind kind) const noexcept {
  const auto it = counts.find(kind);
  return ratio(it == counts.end() ? 0 : it->second, decisive_serves);
}

TerminationBreakdown termination_breakdown(std::span<const ServeRecord> records, TourFilter tour) {
  TerminationBreakdown out;
  for (const auto& r : records) {
    if (!passes(r, tour) || !r.decisive()) continue;
    ++out.decisive_serves;
    ++out.counts[r.terminal_kind];
  }
  return out;
}

double ufe_termination_share(std::span<const ServeRecord> records, TourFilter tour) {
  return termination_breakdown(records, tour).share(TerminalKind::unforced_error);
}

Rankings rate_rankings(std::vector<PlayerUfeProfile> profiles, std::size_t min_matches, std::size_t k) {
  std::erase_if(profiles, [&](const PlayerUfeProfile& p) { return p.matches_played < min_matches; });
  const auto tie_break = [](const PlayerUfeProfile& a, const PlayerUfeProfile& b) {
    if (a.matches_played != b.matches_played) return a.matches_played > b.matches_played;
    return a.player_id < b.player_id;
  };
  Rankings out;
  auto ascending = profiles;
  std::sort(ascending.begin(), ascending.end(), [&](const auto& a, const auto& b) {
    if (a.ufe_rate != b.ufe_rate) return a.ufe_rate < b.ufe_rate;
    return tie_break(a, b);
  });
  auto descending = std::move(profiles);
  std::sort(descending.begin(), descending.end(), [&](const auto& a, const auto& b) {
    if (a.ufe_rate != b.ufe_rate) return a.ufe_rate > b.ufe_rate;
    return tie_break(a, b);
  });
  ascending.resize(std::min(k, ascending.size()));
  descending.resize(std::min(k, descending.size()));
  out.lowest = std::move(ascending);
  out.highest = std::move(descending);
  return out;
}

std::vector<HistogramBin> rate_histogram(std::span<const PlayerUfeProfile> profiles, double bin_width_pct,
                                         double max_pct) {
  if (bin_width_pct <= 0.0 || max_pct <= 0.0) throw UsageError("histogram bin width and range must be positive");
  const auto bins = static_cast<std::size_t>(std::ceil(max_pct / bin_width_pct - 1e-9));
  std::vector<HistogramBin> out(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    out[i].lower_pct = static_cast<double>(i) * bin_width_pct;
    out[i].upper_pct = static_cast<double>(i + 1) * bin_width_pct;
  }
  for (const auto& p : profiles) {
    const double pct = p.ufe_rate * 100.0;
    auto idx = static_cast<std::size_t>(std::floor(pct / bin_width_pct + 1e-9));
    idx = std::min(idx, bins - 1);
    ++out[idx].count;
  }
  return out;
}

double kendall_tau(std::span<const YearRatePoint> series) {
  const auto n = series.size();
  if (n < 2) return 0.0;
  long long concordant = 0;
  long long discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = series[j].year - series[i].year;
      const double dy = series[j].rate - series[i].rate;
      if (dx * dy > 0) ++concordant;
      if (dx * dy < 0) ++discordant;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace unforced

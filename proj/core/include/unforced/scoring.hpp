#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "unforced/records.hpp"

namespace unforced {

struct MatchFormat {
  int best_of = 5;
  bool ad_scoring = true;
  int tiebreak_trigger_games = 6;
  int tiebreak_target_points = 7;
  /// When false the deciding set is an advantage set with no tiebreak.
  bool final_set_tiebreak = true;

  int sets_to_win() const noexcept { return best_of / 2 + 1; }
  /// Throws UsageError on an invalid format.
  void validate() const;

  friend bool operator==(const MatchFormat&, const MatchFormat&) = default;
};

struct SetScore {
  std::array<int, 2> games{};
  /// Points scored in the tiebreak by the set's loser, when one was played.
  std::optional<int> tiebreak_loser_points;

  friend bool operator==(const SetScore&, const SetScore&) = default;
};

/// Full state of a match in progress. Indexed by `index_of(Player)`.
class MatchScore {
public:
  MatchScore(const MatchFormat& format, Player initial_server);

  /// Throws UsageError if the match is already over.
  void apply_point(Player winner);

  Player current_server() const noexcept;
  bool match_over() const noexcept { return match_over_; }
  std::optional<Player> winner() const noexcept;
  bool in_tiebreak() const noexcept { return in_tiebreak_; }

  int points_in_game(Player p) const noexcept { return points_[index_of(p)]; }
  int games_in_set(Player p) const noexcept { return games_[index_of(p)]; }
  int sets_won(Player p) const noexcept { return sets_[index_of(p)]; }
  int cumulative_points_won(Player p) const noexcept { return total_points_[index_of(p)]; }
  /// Tiebreaks count as one game for their winner.
  int cumulative_games_won(Player p) const noexcept { return total_games_[index_of(p)]; }
  const std::vector<SetScore>& completed_sets() const noexcept { return completed_sets_; }
  const MatchFormat& format() const noexcept { return format_; }

  /// Current game score from A's side: "15-40", "40-AD", or tiebreak points "5-3".
  std::string render_game() const;
  /// Set scores so far, e.g. "6-4 3-6 7-6(5) 2-1".
  std::string render_sets() const;

  friend bool operator==(const MatchScore&, const MatchScore&) = default;

private:
  void win_game(int w);
  void win_set(int w, std::optional<int> tiebreak_loser_points);
  bool tiebreak_allowed_in_current_set() const noexcept;

  MatchFormat format_;
  std::array<int, 2> points_{};
  std::array<int, 2> games_{};
  std::array<int, 2> sets_{};
  std::array<int, 2> total_points_{};
  std::array<int, 2> total_games_{};
  std::vector<SetScore> completed_sets_;
  Player game_server_;
  bool in_tiebreak_ = false;
  bool match_over_ = false;
};

MatchScore new_match(const MatchFormat& format, Player initial_server);
/// Value-returning form of MatchScore::apply_point.
MatchScore apply_point(MatchScore score, Player winner);
inline Player current_server(const MatchScore& score) noexcept { return score.current_server(); }

}  // namespace unforced

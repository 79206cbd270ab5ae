#include "unforced/scoring.hpp"

#include <sstream>

#include "unforced/error.hpp"

namespace unforced {

void MatchFormat::validate() const {
  if (best_of < 1 || best_of % 2 == 0) throw UsageError("best_of must be a positive odd number");
  if (tiebreak_trigger_games < 1) throw UsageError("tiebreak trigger must be at least one game");
  if (tiebreak_target_points < 7) throw UsageError("tiebreak target must be at least 7 points");
}

MatchScore::MatchScore(const MatchFormat& format, Player initial_server)
    : format_(format), game_server_(initial_server) {
  format_.validate();
}

Player MatchScore::current_server() const noexcept {
  if (!in_tiebreak_) return game_server_;
  // First tiebreak point by the game-rotation server, then blocks of two.
  const int played = points_[0] + points_[1];
  return ((played + 1) / 2) % 2 == 0 ? game_server_ : opponent(game_server_);
}

std::optional<Player> MatchScore::winner() const noexcept {
  if (!match_over_) return std::nullopt;
  return sets_[0] > sets_[1] ? Player::A : Player::B;
}

void MatchScore::apply_point(Player winner) {
  if (match_over_) throw UsageError("point applied after the match is over");
  const int w = index_of(winner);
  const int l = 1 - w;
  ++total_points_[w];
  ++points_[w];

  if (in_tiebreak_) {
    if (points_[w] >= format_.tiebreak_target_points && points_[w] - points_[l] >= 2) win_game(w);
    return;
  }
  if (format_.ad_scoring) {
    if (points_[w] >= 4 && points_[w] - points_[l] >= 2) win_game(w);
  } else if (points_[w] >= 4) {
    win_game(w);
  }
}

bool MatchScore::tiebreak_allowed_in_current_set() const noexcept {
  const bool final_set = sets_[0] + sets_[1] == format_.best_of - 1;
  return !final_set || format_.final_set_tiebreak;
}

void MatchScore::win_game(int w) {
  const int l = 1 - w;
  const bool was_tiebreak = in_tiebreak_;
  const int loser_points = points_[l];
  ++games_[w];
  ++total_games_[w];
  points_ = {0, 0};
  in_tiebreak_ = false;
  game_server_ = opponent(game_server_);

  const int trigger = format_.tiebreak_trigger_games;
  if (was_tiebreak) {
    win_set(w, loser_points);
  } else if (games_[w] >= trigger && games_[w] - games_[l] >= 2) {
    win_set(w, std::nullopt);
  } else if (games_[w] == trigger && games_[l] == trigger && tiebreak_allowed_in_current_set()) {
    in_tiebreak_ = true;
  }
}

void MatchScore::win_set(int w, std::optional<int> tiebreak_loser_points) {
  completed_sets_.push_back({games_, tiebreak_loser_points});
  games_ = {0, 0};
  ++sets_[w];
  if (sets_[w] == format_.sets_to_win()) match_over_ = true;
}

std::string MatchScore::render_game() const {
  std::ostringstream os;
  if (in_tiebreak_) {
    os << points_[0] << '-' << points_[1];
    return os.str();
  }
  const auto [a, b] = points_;
  if (a >= 3 && b >= 3) {
    if (a == b) return "40-40";
    return a > b ? "AD-40" : "40-AD";
  }
  static constexpr const char* kCalls[] = {"0", "15", "30", "40"};
  os << kCalls[a] << '-' << kCalls[b];
  return os.str();
}

std::string MatchScore::render_sets() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& set : completed_sets_) {
    if (!first) os << ' ';
    first = false;
    os << set.games[0] << '-' << set.games[1];
    if (set.tiebreak_loser_points) os << '(' << *set.tiebreak_loser_points << ')';
  }
  if (!match_over_ && (games_[0] || games_[1] || points_[0] || points_[1])) {
    if (!first) os << ' ';
    os << games_[0] << '-' << games_[1];
  }
  return os.str();
}

MatchScore new_match(const MatchFormat& format, Player initial_server) { return MatchScore(format, initial_server); }

MatchScore apply_point(MatchScore score, Player winner) {
  score.apply_point(winner);
  return score;
}

}  // namespace unforced

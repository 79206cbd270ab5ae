#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace unforced {

/// The two simulated participants. A is the player whose errors are studied.
enum class Player : std::uint8_t { A, B };

constexpr Player opponent(Player p) noexcept { return p == Player::A ? Player::B : Player::A; }
constexpr int index_of(Player p) noexcept { return p == Player::A ? 0 : 1; }

/// Role of a participant within a single charted point.
enum class Role : std::uint8_t { server, receiver };

constexpr Role other(Role r) noexcept { return r == Role::server ? Role::receiver : Role::server; }

enum class Tour : std::uint8_t { atp, wta, unknown };

enum class TerminalKind : std::uint8_t {
  ace,
  service_winner,
  rally_winner,
  forced_error,
  unforced_error,
  double_fault,
  first_serve_fault,
};

/// Winner or error committer of a point, relative to that point's server.
enum class Side : std::uint8_t { server, receiver, none };

/// Who contacted the ball on touch `t` (the serve is touch 1).
constexpr Role role_at_touch(int t) noexcept { return t % 2 == 1 ? Role::server : Role::receiver; }

/// One serve event after augmentation. A charted point with a second serve
/// produces two of these: the first-serve fault and the decisive second serve.
struct ServeRecord {
  std::string match_id;
  int point_index = 0;
  std::string server_id;
  std::string receiver_id;
  int serve_number = 1;
  bool is_first_serve_fault = false;
  int terminal_touch = 1;
  TerminalKind terminal_kind = TerminalKind::ace;
  Side point_winner = Side::server;
  Side error_committer = Side::none;
  std::optional<int> year;
  Tour tour = Tour::unknown;

  bool decisive() const noexcept { return terminal_kind != TerminalKind::first_serve_fault; }

  friend bool operator==(const ServeRecord&, const ServeRecord&) = default;
};

std::string_view to_string(TerminalKind kind) noexcept;
std::string_view to_string(Side side) noexcept;
std::string_view to_string(Tour tour) noexcept;
std::string_view to_string(Player p) noexcept;

/// Inverse of to_string; nullopt for unknown spellings.
std::optional<TerminalKind> parse_terminal_kind(std::string_view text) noexcept;
std::optional<Side> parse_side(std::string_view text) noexcept;
/// Accepts "ATP"/"WTA"/"M"/"W" in any case.
std::optional<Tour> parse_tour(std::string_view text) noexcept;

/// Player-name comparison: case-insensitive, '_' and ' ' equivalent.
std::string normalize_player_name(std::string_view name);
bool same_player(std::string_view lhs, std::string_view rhs);

}  // namespace unforced

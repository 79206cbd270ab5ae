#include "unforced/records.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace unforced {

namespace {

constexpr std::array<std::pair<TerminalKind, std::string_view>, 7> kKindNames{{
    {TerminalKind::ace, "ace"},
    {TerminalKind::service_winner, "service_winner"},
    {TerminalKind::rally_winner, "rally_winner"},
    {TerminalKind::forced_error, "forced_error"},
    {TerminalKind::unforced_error, "unforced_error"},
    {TerminalKind::double_fault, "double_fault"},
    {TerminalKind::first_serve_fault, "first_serve_fault"},
}};

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(TerminalKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::server: return "server";
    case Side::receiver: return "receiver";
    case Side::none: return "none";
  }
  return "none";
}

std::string_view to_string(Tour tour) noexcept {
  switch (tour) {
    case Tour::atp: return "ATP";
    case Tour::wta: return "WTA";
    case Tour::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Player p) noexcept { return p == Player::A ? "A" : "B"; }

std::optional<TerminalKind> parse_terminal_kind(std::string_view text) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::optional<Side> parse_side(std::string_view text) noexcept {
  if (text == "server") return Side::server;
  if (text == "receiver") return Side::receiver;
  if (text == "none") return Side::none;
  return std::nullopt;
}

std::optional<Tour> parse_tour(std::string_view text) noexcept {
  const auto t = lower(text);
  if (t == "atp" || t == "m") return Tour::atp;
  if (t == "wta" || t == "w") return Tour::wta;
  if (t == "unknown" || t.empty()) return Tour::unknown;
  return std::nullopt;
}

std::string normalize_player_name(std::string_view name) {
  auto out = lower(name);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

bool same_player(std::string_view lhs, std::string_view rhs) {
  return normalize_player_name(lhs) == normalize_player_name(rhs);
}

}  // namespace unforced

#include "unforced/notation.hpp"

#include <cctype>
#include <sstream>

namespace unforced {

namespace {

constexpr std::string_view kServeDirections = "0456";
constexpr std::string_view kServeFaults = "nwdxge!V";
constexpr std::string_view kStrokes = "fbrsvzopuylmhijktq";
constexpr std::string_view kShotDigits = "01237890";
constexpr std::string_view kModifiers = "+-=;^";
constexpr std::string_view kErrorTypes = "nwdx!e";

bool in(std::string_view set, char c) noexcept { return set.find(c) != std::string_view::npos; }

std::string describe(NotationErrorKind kind, std::size_t offset, char offending, std::string_view notation) {
  std::ostringstream os;
  os << (kind == NotationErrorKind::unrecognized_terminal_marker ? "unrecognized terminal marker"
                                                                 : "unrecognized shot code");
  if (offending == '\0') {
    os << " (notation ended)";
  } else {
    os << " '" << offending << "'";
  }
  os << " at offset " << offset << " in \"" << notation << '"';
  return os.str();
}

[[noreturn]] void fail(NotationErrorKind kind, std::string_view s, std::size_t pos) {
  throw NotationError(kind, pos, pos < s.size() ? s[pos] : '\0', s);
}

// Non-alphanumeric junk where a marker belongs reads as a bad marker;
// a stray letter or digit reads as a bad shot code.
[[noreturn]] void fail_unexpected(std::string_view s, std::size_t pos) {
  if (pos >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos]))) {
    fail(NotationErrorKind::unrecognized_terminal_marker, s, pos);
  }
  fail(NotationErrorKind::unrecognized_shot_code, s, pos);
}

Side side_of(Role r) noexcept { return r == Role::server ? Side::server : Side::receiver; }

}  // namespace

NotationError::NotationError(NotationErrorKind kind, std::size_t offset, char offending, std::string_view notation)
    : DataError(describe(kind, offset, offending, notation)), kind_(kind), offset_(offset), offending_(offending) {}

ShotOutcome parse_shot_notation(std::string_view s, int serve_number) {
  if (s.empty()) throw UsageError("shot notation must be non-empty");
  if (serve_number != 1 && serve_number != 2) throw UsageError("serve number must be 1 or 2");

  std::size_t pos = 0;
  while (pos < s.size() && s[pos] == 'c') ++pos;  // lets replay the same serve

  if (pos >= s.size() || !in(kServeDirections, s[pos])) {
    fail(NotationErrorKind::unrecognized_shot_code, s, pos);
  }
  ++pos;
  while (pos < s.size() && s[pos] == '+') ++pos;  // serve-and-volley

  ShotOutcome out;
  if (pos >= s.size()) fail(NotationErrorKind::unrecognized_terminal_marker, s, pos);

  const char after_serve = s[pos];
  if (in(kServeFaults, after_serve)) {
    while (pos < s.size() && in(kServeFaults, s[pos])) ++pos;
    if (pos != s.size()) fail_unexpected(s, pos);
    out.terminal_touch = 1;
    if (serve_number == 1) {
      out.terminal_kind = TerminalKind::first_serve_fault;
      out.point_winner = Side::none;
      out.error_committer = Side::none;
    } else {
      out.terminal_kind = TerminalKind::double_fault;
      out.point_winner = Side::receiver;
      out.error_committer = Side::server;
    }
    return out;
  }
  if (after_serve == '*' || after_serve == '#') {
    if (pos + 1 != s.size()) fail_unexpected(s, pos + 1);
    out.terminal_touch = 1;
    out.terminal_kind = after_serve == '*' ? TerminalKind::ace : TerminalKind::service_winner;
    out.point_winner = Side::server;
    out.error_committer = Side::none;
    return out;
  }

  int touch = 1;
  while (true) {
    if (pos >= s.size()) fail(NotationErrorKind::unrecognized_terminal_marker, s, pos);
    if (!in(kStrokes, s[pos])) fail_unexpected(s, pos);
    ++touch;
    ++pos;

    bool erred = false;
    while (pos < s.size()) {
      const char c = s[pos];
      if (in(kErrorTypes, c)) {
        erred = true;
      } else if (!in(kShotDigits, c) && !in(kModifiers, c)) {
        break;
      }
      ++pos;
    }
    if (pos >= s.size()) fail(NotationErrorKind::unrecognized_terminal_marker, s, pos);

    const char marker = s[pos];
    if (marker == '*' || marker == '#' || marker == '@') {
      if (marker == '*' && erred) fail(NotationErrorKind::unrecognized_terminal_marker, s, pos);
      if (pos + 1 != s.size()) fail_unexpected(s, pos + 1);
      const Role hitter = role_at_touch(touch);
      out.terminal_touch = touch;
      if (marker == '*') {
        out.terminal_kind = TerminalKind::rally_winner;
        out.point_winner = side_of(hitter);
        out.error_committer = Side::none;
      } else {
        out.terminal_kind = marker == '#' ? TerminalKind::forced_error : TerminalKind::unforced_error;
        out.point_winner = side_of(other(hitter));
        out.error_committer = side_of(hitter);
      }
      return out;
    }
    // An erring shot must close the rally.
    if (erred) fail(NotationErrorKind::unrecognized_terminal_marker, s, pos);
  }
}

bool is_serve_fault_notation(std::string_view notation) noexcept {
  if (notation.empty()) return false;
  try {
    return parse_shot_notation(notation, 1).terminal_kind == TerminalKind::first_serve_fault;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace unforced

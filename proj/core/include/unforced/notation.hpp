#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "unforced/error.hpp"
#include "unforced/records.hpp"

namespace unforced {

/// Decoded result of one serve's charted notation.
struct ShotOutcome {
  int terminal_touch = 1;
  TerminalKind terminal_kind = TerminalKind::ace;
  Side point_winner = Side::server;
  Side error_committer = Side::none;

  friend bool operator==(const ShotOutcome&, const ShotOutcome&) = default;
};

enum class NotationErrorKind { unrecognized_terminal_marker, unrecognized_shot_code };

class NotationError : public DataError {
public:
  NotationError(NotationErrorKind kind, std::size_t offset, char offending, std::string_view notation);

  NotationErrorKind kind() const noexcept { return kind_; }
  /// Zero-based offset into the notation; equals its length when the string ended early.
  std::size_t offset() const noexcept { return offset_; }
  /// '\0' when the string ended before a terminal marker.
  char offending() const noexcept { return offending_; }

private:
  NotationErrorKind kind_;
  std::size_t offset_;
  char offending_;
};

/// Decode a Match Charting Project serve string.
///
/// Layout: any number of `c` lets, a serve direction digit (4, 5, 6 or 0),
/// then either a serve fault code (`n w d x g e ! V`), an ace `*`, an
/// unreturnable serve `#`, or a rally of shots. Each shot is a stroke letter
/// followed by optional direction/depth digits, position modifiers
/// (`+ - = ; ^`) and an error type (`n w d x ! e`). The rally ends on the
/// last shot with `*` (winner), `#` (forced error) or `@` (unforced error).
///
/// A serve fault decodes as first_serve_fault when `serve_number` is 1 and as
/// double_fault when it is 2. The error committer of a rally error is the
/// player who struck the terminal touch: odd touches belong to the server.
ShotOutcome parse_shot_notation(std::string_view notation, int serve_number);

/// True when the notation is a serve fault (no point awarded on a first serve).
bool is_serve_fault_notation(std::string_view notation) noexcept;

}  // namespace unforced

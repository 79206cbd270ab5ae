#pragma once

#include <string>
#include <vector>

#include "unforced/records.hpp"
#include "unforced/serve_pools.hpp"

#ifndef UNFORCED_TEST_DATA_DIR
#define UNFORCED_TEST_DATA_DIR "tests/data"
#endif

namespace unforced::testing {

inline const std::string kDataDir = UNFORCED_TEST_DATA_DIR;
inline const std::string kPlayerA = "Alex Moreau";
inline const std::string kPlayerB = "Ben Carter";

/// A decisive or fault record with fields consistent with its kind.
inline ServeRecord make_record(const std::string& server, const std::string& receiver, int serve_number,
                               TerminalKind kind, int touch = 1, const std::string& match_id = "m1",
                               int point_index = 1) {
  ServeRecord r;
  r.match_id = match_id;
  r.point_index = point_index;
  r.server_id = server;
  r.receiver_id = receiver;
  r.serve_number = serve_number;
  r.terminal_kind = kind;
  r.terminal_touch = touch;
  r.tour = Tour::atp;
  r.year = 2020;
  const Side hitter = role_at_touch(touch) == Role::server ? Side::server : Side::receiver;
  const Side other_side = hitter == Side::server ? Side::receiver : Side::server;
  switch (kind) {
    case TerminalKind::ace:
    case TerminalKind::service_winner:
      r.point_winner = Side::server;
      r.error_committer = Side::none;
      break;
    case TerminalKind::rally_winner:
      r.point_winner = hitter;
      r.error_committer = Side::none;
      break;
    case TerminalKind::forced_error:
    case TerminalKind::unforced_error:
      r.point_winner = other_side;
      r.error_committer = hitter;
      break;
    case TerminalKind::double_fault:
      r.point_winner = Side::receiver;
      r.error_committer = Side::server;
      break;
    case TerminalKind::first_serve_fault:
      r.is_first_serve_fault = true;
      r.point_winner = Side::none;
      r.error_committer = Side::none;
      break;
  }
  return r;
}

/// Pools where player A wins every point: A serves aces, B loses every rally at touch 2.
inline ServePoolSet all_a_pools() {
  ServePoolSet::Pools pools;
  pools[0] = {make_record(kPlayerA, kPlayerB, 1, TerminalKind::ace)};
  pools[1] = {make_record(kPlayerA, kPlayerB, 2, TerminalKind::ace)};
  pools[2] = {make_record(kPlayerB, kPlayerA, 1, TerminalKind::rally_winner, 2)};
  pools[3] = {make_record(kPlayerB, kPlayerA, 2, TerminalKind::rally_winner, 2)};
  return ServePoolSet(kPlayerA, kPlayerB, PoolScope::head_to_head, std::move(pools));
}

/// Each server wins the point with probability wins/size via aces and receiver winners.
inline ServePoolSet iid_pools(int server_wins, int size) {
  ServePoolSet::Pools pools;
  for (int i = 0; i < size; ++i) {
    const bool server_wins_point = i < server_wins;
    const auto kind = server_wins_point ? TerminalKind::ace : TerminalKind::rally_winner;
    const int touch = server_wins_point ? 1 : 2;
    pools[0].push_back(make_record(kPlayerA, kPlayerB, 1, kind, touch, "m1", i));
    pools[1].push_back(make_record(kPlayerA, kPlayerB, 2, kind, touch, "m1", i));
    pools[2].push_back(make_record(kPlayerB, kPlayerA, 1, kind, touch, "m1", i));
    pools[3].push_back(make_record(kPlayerB, kPlayerA, 2, kind, touch, "m1", i));
  }
  return ServePoolSet(kPlayerA, kPlayerB, PoolScope::head_to_head, std::move(pools));
}

/// Every decisive record is an unforced error by A at touch `touch`.
inline ServePoolSet all_a_ufe_pools(int touch) {
  // A commits the error as server on odd touches and as receiver on even ones.
  const bool a_serving = role_at_touch(touch) == Role::server;
  const auto& server = a_serving ? kPlayerA : kPlayerB;
  const auto& receiver = a_serving ? kPlayerB : kPlayerA;
  ServePoolSet::Pools pools;
  const auto ufe1 = make_record(server, receiver, 1, TerminalKind::unforced_error, touch);
  const auto ufe2 = make_record(server, receiver, 2, TerminalKind::unforced_error, touch);
  // The other server's pools hold A's errors on the opposite-parity touch.
  const int other_touch = touch + 1;
  const auto alt1 = make_record(receiver, server, 1, TerminalKind::unforced_error, other_touch);
  const auto alt2 = make_record(receiver, server, 2, TerminalKind::unforced_error, other_touch);
  const int own = a_serving ? 0 : 2;
  const int alt = a_serving ? 2 : 0;
  pools[own] = {ufe1};
  pools[own + 1] = {ufe2};
  pools[alt] = {alt1};
  pools[alt + 1] = {alt2};
  return ServePoolSet(kPlayerA, kPlayerB, PoolScope::head_to_head, std::move(pools));
}

}  // namespace unforced::testing

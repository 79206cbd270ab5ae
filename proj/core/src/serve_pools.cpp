#include "unforced/serve_pools.hpp"

#include "unforced/analytics.hpp"

namespace unforced {

std::string_view to_string(PoolId id) noexcept {
  switch (id) {
    case PoolId::A_first: return "A_first";
    case PoolId::A_second: return "A_second";
    case PoolId::B_first: return "B_first";
    case PoolId::B_second: return "B_second";
  }
  return "unknown";
}

std::string_view to_string(PoolScope scope) noexcept {
  return scope == PoolScope::head_to_head ? "head_to_head" : "versus_field";
}

EmptyPoolError::EmptyPoolError(PoolId id)
    : DataError("serve pool " + std::string(to_string(id)) +
                " is empty; the pairing has too little head-to-head history (try the versus-field scope)"),
      pool_(id) {}

ServePoolSet::ServePoolSet(std::string player_a, std::string player_b, PoolScope scope, Pools pools,
                           std::size_t excluded_records)
    : player_a_(std::move(player_a)),
      player_b_(std::move(player_b)),
      scope_(scope),
      pools_(std::move(pools)),
      excluded_(excluded_records) {
  if (same_player(player_a_, player_b_)) throw UsageError("player A and player B must differ");
  for (const PoolId id : kAllPools) {
    const auto& records = pool(id);
    if (records.empty()) throw EmptyPoolError(id);
    const auto& server = pool_server(id) == Player::A ? player_a_ : player_b_;
    const auto& receiver = pool_server(id) == Player::A ? player_b_ : player_a_;
    for (const auto& r : records) {
      if (!same_player(r.server_id, server) || r.serve_number != pool_serve_number(id)) {
        throw UsageError("record " + r.match_id + " #" + std::to_string(r.point_index) + " does not belong in pool " +
                         std::string(to_string(id)));
      }
      if (scope_ == PoolScope::head_to_head && !same_player(r.receiver_id, receiver)) {
        throw UsageError("head-to-head pool " + std::string(to_string(id)) + " holds a serve to " + r.receiver_id);
      }
      if (pool_serve_number(id) == 2 && !r.decisive()) {
        throw UsageError("second-serve pool holds a first-serve fault");
      }
    }
  }
}

std::size_t ServePoolSet::total_records() const noexcept {
  std::size_t n = 0;
  for (const auto& p : pools_) n += p.size();
  return n;
}

ServePoolSet build_pools(std::span<const ServeRecord> records, std::string_view player_a, std::string_view player_b,
                         PoolScope scope) {
  const auto a = normalize_player_name(player_a);
  const auto b = normalize_player_name(player_b);
  ServePoolSet::Pools pools;
  std::size_t excluded = 0;
  for (const auto& r : records) {
    const auto server = normalize_player_name(r.server_id);
    std::optional<Player> who;
    if (server == a) who = Player::A;
    if (server == b) who = Player::B;
    if (who && scope == PoolScope::head_to_head) {
      const auto receiver = normalize_player_name(r.receiver_id);
      if (receiver != (*who == Player::A ? b : a)) who.reset();
    }
    if (!who) {
      ++excluded;
      continue;
    }
    pools[static_cast<std::size_t>(select_pool(*who, r.serve_number))].push_back(r);
  }
  return ServePoolSet(std::string(player_a), std::string(player_b), scope, std::move(pools), excluded);
}

const ServeRecord& sample(const ServePoolSet& pools, PoolId id, RandomStream& rng) {
  const auto& records = pools.pool(id);
  if (records.empty()) throw EmptyPoolError(id);
  return records[rng.index(records.size())];
}

double pooled_ufe_rate(const ServePoolSet& pools, Player who) {
  std::size_t contacts = 0;
  std::size_t errors = 0;
  for (const PoolId id : kAllPools) {
    const Role role = pool_server(id) == who ? Role::server : Role::receiver;
    const Side side = role == Role::server ? Side::server : Side::receiver;
    for (const auto& r : pools.pool(id)) {
      if (!r.decisive()) continue;
      const auto e = touch_exposure(r.terminal_touch);
      contacts += static_cast<std::size_t>(role == Role::server ? e.server_contacts : e.receiver_contacts);
      if (r.terminal_kind == TerminalKind::unforced_error && r.error_committer == side) ++errors;
    }
  }
  return contacts == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(contacts);
}

nlohmann::json pool_summary_json(const ServePoolSet& pools) {
  auto out = nlohmann::json::object();
  out["player_a"] = pools.player_a();
  out["player_b"] = pools.player_b();
  out["scope"] = to_string(pools.scope());
  out["excluded_records"] = pools.excluded_records();
  auto list = nlohmann::json::array();
  for (const PoolId id : kAllPools) {
    std::size_t faults = 0;
    std::array<std::size_t, 2> contacts{};
    std::array<std::size_t, 2> errors{};
    for (const auto& r : pools.pool(id)) {
      if (r.terminal_kind == TerminalKind::first_serve_fault || r.terminal_kind == TerminalKind::double_fault) ++faults;
      if (!r.decisive()) continue;
      const auto e = touch_exposure(r.terminal_touch);
      contacts[0] += static_cast<std::size_t>(e.server_contacts);
      contacts[1] += static_cast<std::size_t>(e.receiver_contacts);
      if (r.terminal_kind == TerminalKind::unforced_error) {
        ++errors[r.error_committer == Side::server ? 0 : 1];
      }
    }
    const auto rate = [](std::size_t n, std::size_t d) { return d == 0 ? 0.0 : double(n) / double(d); };
    list.push_back({
        {"pool", to_string(id)},
        {"size", pools.size(id)},
        {"fault_rate", rate(faults, pools.size(id))},
        {"server_ufe_rate", rate(errors[0], contacts[0])},
        {"receiver_ufe_rate", rate(errors[1], contacts[1])},
    });
  }
  out["pools"] = std::move(list);
  out["pooled_ufe_rate_a"] = pooled_ufe_rate(pools, Player::A);
  out["pooled_ufe_rate_b"] = pooled_ufe_rate(pools, Player::B);
  return out;
}

}  // namespace unforced

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unforced/error.hpp"
#include "unforced/random.hpp"
#include "unforced/records.hpp"

namespace unforced {

/// The four empirical serve datasets: who serves, and on which serve.
enum class PoolId : std::uint8_t { A_first, A_second, B_first, B_second };

inline constexpr std::array<PoolId, 4> kAllPools{PoolId::A_first, PoolId::A_second, PoolId::B_first,
                                                 PoolId::B_second};

enum class PoolScope : std::uint8_t { head_to_head, versus_field };

std::string_view to_string(PoolId id) noexcept;
std::string_view to_string(PoolScope scope) noexcept;

constexpr PoolId select_pool(Player server, int serve_number) noexcept {
  if (server == Player::A) return serve_number == 1 ? PoolId::A_first : PoolId::A_second;
  return serve_number == 1 ? PoolId::B_first : PoolId::B_second;
}
constexpr Player pool_server(PoolId id) noexcept {
  return id == PoolId::A_first || id == PoolId::A_second ? Player::A : Player::B;
}
constexpr int pool_serve_number(PoolId id) noexcept {
  return id == PoolId::A_first || id == PoolId::B_first ? 1 : 2;
}

class EmptyPoolError : public DataError {
public:
  explicit EmptyPoolError(PoolId id);
  PoolId pool() const noexcept { return pool_; }

private:
  PoolId pool_;
};

/// Frozen partition of serve records for one (A, B) pairing.
class ServePoolSet {
public:
  using Pools = std::array<std::vector<ServeRecord>, 4>;

  /// Validates membership (server and serve number per pool, opponent for
  /// head-to-head) and throws EmptyPoolError for an empty pool.
  ServePoolSet(std::string player_a, std::string player_b, PoolScope scope, Pools pools,
               std::size_t excluded_records = 0);

  const std::vector<ServeRecord>& pool(PoolId id) const noexcept { return pools_[static_cast<std::size_t>(id)]; }
  std::size_t size(PoolId id) const noexcept { return pool(id).size(); }
  std::size_t total_records() const noexcept;
  std::size_t excluded_records() const noexcept { return excluded_; }
  const std::string& player_a() const noexcept { return player_a_; }
  const std::string& player_b() const noexcept { return player_b_; }
  PoolScope scope() const noexcept { return scope_; }

private:
  std::string player_a_;
  std::string player_b_;
  PoolScope scope_;
  Pools pools_;
  std::size_t excluded_;
};

/// Partitions `records` into the four pools. Names match case-insensitively.
/// Head-to-head keeps only A-vs-B serves; versus-field keeps every serve by A or B.
ServePoolSet build_pools(std::span<const ServeRecord> records, std::string_view player_a,
                         std::string_view player_b, PoolScope scope = PoolScope::head_to_head);

/// Uniform draw with replacement; consumes exactly one value from `rng`.
const ServeRecord& sample(const ServePoolSet& pools, PoolId id, RandomStream& rng);

/// Unforced-error rate of the simulated player `who`, counted over the
/// decisive records of all four pools with contacts assigned by touch parity.
double pooled_ufe_rate(const ServePoolSet& pools, Player who);

/// Sizes, fault rates and per-role unforced-error rates for each pool.
nlohmann::json pool_summary_json(const ServePoolSet& pools);

}  // namespace unforced

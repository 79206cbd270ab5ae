#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unforced/counterfactual.hpp"
#include "unforced/random.hpp"
#include "unforced/scoring.hpp"
#include "unforced/serve_pools.hpp"

namespace unforced {

enum class ScenarioKind : std::uint8_t { historic, reduce, eliminate };

/// Scenario in canonical form: reduce(0) is historic and reduce(1) is
/// eliminate, so equivalent scenarios compare and print identically.
class Scenario {
public:
  static Scenario historic() noexcept { return Scenario(ScenarioKind::historic, 0.0); }
  static Scenario eliminate() noexcept { return Scenario(ScenarioKind::eliminate, 1.0); }
  /// Throws UsageError unless 0 <= x <= 1.
  static Scenario reduce(double x);

  ScenarioKind kind() const noexcept { return kind_; }
  double x() const noexcept { return x_; }
  ReductionPolicy policy() const { return ReductionPolicy(x_); }
  /// "historic", "reduce(0.1)", "eliminate".
  std::string name() const;
  /// Row label in the style "Simulated 10% UFE Reduction".
  std::string label() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

private:
  Scenario(ScenarioKind kind, double x) noexcept : kind_(kind), x_(x) {}
  ScenarioKind kind_;
  double x_;
};

enum class FirstServerPolicy : std::uint8_t { alternate, fixed_A, fixed_B, random };

std::string_view to_string(FirstServerPolicy policy) noexcept;

struct SimulationConfig {
  std::size_t n_matches = 3000;
  std::uint64_t seed = 42;
  Scenario scenario = Scenario::historic();
  MatchFormat format{};
  FirstServerPolicy first_server = FirstServerPolicy::alternate;
  PoolScope pool_scope = PoolScope::head_to_head;
  /// Worker threads; results do not depend on it.
  unsigned executors = 1;
};

struct PointDiagnostics {
  PoolId decisive_pool = PoolId::A_first;
  bool second_serve = false;
  int terminal_touch = 1;
  TerminalKind terminal_kind = TerminalKind::ace;
  bool a_unforced_error = false;
  bool removed = false;
};

struct PointOutcome {
  Player winner = Player::A;
  PointDiagnostics diagnostics;
};

/// One simulated point. Draws the server's first-serve pool; a first-serve
/// fault triggers a draw from the second-serve pool. If the decisive record is
/// an unforced error by A, should_remove_ufe decides whether touch-table
/// resolution replaces the charted outcome.
///
/// Draw order: first-serve index, [second-serve index], [removal draw],
/// [resolution draw].
PointOutcome simulate_point(const ServePoolSet& pools, Player server, const TouchWinTable& table,
                            const ReductionPolicy& policy, RandomStream& rng);

struct MatchResult {
  std::array<int, 2> points_won{};
  std::array<int, 2> games_won{};
  std::array<int, 2> sets_won{};
  Player match_winner = Player::A;
  Player first_server = Player::A;
  std::size_t ufes_kept = 0;
  std::size_t ufes_removed = 0;
  std::string score;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Plays one match to completion. `replicate` picks the first server under
/// the alternate policy (even: A, odd: B); the random policy spends one draw.
MatchResult simulate_match(const SimulationConfig& config, const ServePoolSet& pools, const TouchWinTable& table,
                           RandomStream& rng, std::size_t replicate = 0);

struct SimulationSummary {
  Scenario scenario = Scenario::historic();
  std::size_t n_matches = 0;
  double pct_points_won_A = 0.0;
  double pct_games_won_A = 0.0;
  double pct_sets_won_A = 0.0;
  double pct_matches_won_A = 0.0;
  double se_points = 0.0;
  double se_games = 0.0;
  double se_sets = 0.0;
  double se_matches = 0.0;
  std::size_t ufes_kept = 0;
  std::size_t ufes_removed = 0;

  friend bool operator==(const SimulationSummary&, const SimulationSummary&) = default;
};

/// Binomial standard error in percentage points: 100 * sqrt(p(1-p)/n).
double binomial_se_pct(double p, std::size_t n);

/// Means of per-match percentages for points, games and sets with sample-SD
/// standard errors; match share with the binomial standard error.
SimulationSummary summarize(std::span<const MatchResult> results, const Scenario& scenario);

/// Replicate i runs on RandomStream::for_replicate(seed, i); the summary is
/// independent of `executors` and of scheduling. Requires n_matches >= 2.
SimulationSummary run_simulation(const SimulationConfig& config, const ServePoolSet& pools,
                                 const TouchWinTable& table);
/// Same, also returning every replicate in index order.
SimulationSummary run_simulation(const SimulationConfig& config, const ServePoolSet& pools,
                                 const TouchWinTable& table, std::vector<MatchResult>& replicates);

struct ScenarioDifference {
  std::size_t from = 0;
  std::size_t to = 0;
  double d_points = 0.0;
  double d_games = 0.0;
  double d_sets = 0.0;
  double d_matches = 0.0;
  double se_points = 0.0;
  double se_games = 0.0;
  double se_sets = 0.0;
  double se_matches = 0.0;
};

struct ScenarioComparison {
  std::vector<SimulationSummary> summaries;
  /// summaries[to] - summaries[from] for every from < to, SEs in quadrature.
  std::vector<ScenarioDifference> differences;
};

/// Configs must agree on format and seed.
ScenarioComparison compare_scenarios(std::span<const SimulationConfig> configs, const ServePoolSet& pools,
                                     const TouchWinTable& table);

nlohmann::json to_json(const SimulationSummary& summary);
nlohmann::json to_json(const ScenarioComparison& comparison);

/// Aligned text table, one row per scenario: "49.5 (0.07)" cells.
std::string render_summary_table(std::span<const SimulationSummary> summaries, const std::string& player_label);

/// Caveats worth printing next to results (e.g. ATP table used on WTA serves).
std::vector<std::string> simulation_caveats(const ServePoolSet& pools, const TouchWinTable& table);

}  // namespace unforced

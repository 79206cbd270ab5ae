#include "unforced/simulator.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "unforced/error.hpp"

namespace unforced {

namespace {

std::string format_x(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

double pct(int num, int den) noexcept { return den == 0 ? 0.0 : 100.0 * num / den; }

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments mean_and_se(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  Moments m;
  m.mean = sum / n;
  if (values.size() < 2) return m;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return m;
}

}  // namespace

Scenario Scenario::reduce(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw UsageError("reduction probability must lie in [0, 1]");
  if (x == 0.0) return historic();
  if (x == 1.0) return eliminate();
  return Scenario(ScenarioKind::reduce, x);
}

std::string Scenario::name() const {
  switch (kind_) {
    case ScenarioKind::historic: return "historic";
    case ScenarioKind::eliminate: return "eliminate";
    case ScenarioKind::reduce: return "reduce(" + format_x(x_) + ")";
  }
  return "unknown";
}

std::string Scenario::label() const {
  switch (kind_) {
    case ScenarioKind::historic: return "Simulated Historic UFE Rate";
    case ScenarioKind::eliminate: return "Simulated 100% UFE Reduction";
    case ScenarioKind::reduce: return "Simulated " + format_x(x_ * 100.0) + "% UFE Reduction";
  }
  return "unknown";
}

std::string_view to_string(FirstServerPolicy policy) noexcept {
  switch (policy) {
    case FirstServerPolicy::alternate: return "alternate";
    case FirstServerPolicy::fixed_A: return "fixed_A";
    case FirstServerPolicy::fixed_B: return "fixed_B";
    case FirstServerPolicy::random: return "random";
  }
  return "unknown";
}

PointOutcome simulate_point(const ServePoolSet& pools, Player server, const TouchWinTable& table,
                            const ReductionPolicy& policy, RandomStream& rng) {
  PointOutcome out;
  auto& diag = out.diagnostics;
  diag.decisive_pool = select_pool(server, 1);
  const ServeRecord* rec = &sample(pools, diag.decisive_pool, rng);
  if (rec->is_first_serve_fault) {
    diag.second_serve = true;
    diag.decisive_pool = select_pool(server, 2);
    rec = &sample(pools, diag.decisive_pool, rng);
  }
  diag.terminal_touch = rec->terminal_touch;
  diag.terminal_kind = rec->terminal_kind;

  const Side a_side = server == Player::A ? Side::server : Side::receiver;
  diag.a_unforced_error = rec->terminal_kind == TerminalKind::unforced_error && rec->error_committer == a_side;
  if (diag.a_unforced_error && should_remove_ufe(policy, rng)) {
    diag.removed = true;
    out.winner = resolve_removed_ufe(table, rec->terminal_touch, rng);
    return out;
  }
  out.winner = rec->point_winner == Side::server ? server : opponent(server);
  return out;
}

MatchResult simulate_match(const SimulationConfig& config, const ServePoolSet& pools, const TouchWinTable& table,
                           RandomStream& rng, std::size_t replicate) {
  Player first = Player::A;
  switch (config.first_server) {
    case FirstServerPolicy::alternate: first = replicate % 2 == 0 ? Player::A : Player::B; break;
    case FirstServerPolicy::fixed_A: first = Player::A; break;
    case FirstServerPolicy::fixed_B: first = Player::B; break;
    case FirstServerPolicy::random: first = rng.bernoulli(0.5) ? Player::A : Player::B; break;
  }
  const auto policy = config.scenario.policy();
  MatchScore score(config.format, first);
  MatchResult result;
  result.first_server = first;
  while (!score.match_over()) {
    const auto point = simulate_point(pools, score.current_server(), table, policy, rng);
    if (point.diagnostics.a_unforced_error) {
      ++(point.diagnostics.removed ? result.ufes_removed : result.ufes_kept);
    }
    score.apply_point(point.winner);
  }
  for (const Player p : {Player::A, Player::B}) {
    const int i = index_of(p);
    result.points_won[i] = score.cumulative_points_won(p);
    result.games_won[i] = score.cumulative_games_won(p);
    result.sets_won[i] = score.sets_won(p);
  }
  result.match_winner = *score.winner();
  result.score = score.render_sets();
  return result;
}

double binomial_se_pct(double p, std::size_t n) {
  if (n == 0) throw UsageError("binomial standard error needs at least one trial");
  return 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

SimulationSummary summarize(std::span<const MatchResult> results, const Scenario& scenario) {
  if (results.size() < 2) throw UsageError("a summary needs at least two matches");
  std::vector<double> points;
  std::vector<double> games;
  std::vector<double> sets;
  points.reserve(results.size());
  games.reserve(results.size());
  sets.reserve(results.size());
  std::size_t wins = 0;
  SimulationSummary s;
  s.scenario = scenario;
  s.n_matches = results.size();
  for (const auto& r : results) {
    points.push_back(pct(r.points_won[0], r.points_won[0] + r.points_won[1]));
    games.push_back(pct(r.games_won[0], r.games_won[0] + r.games_won[1]));
    sets.push_back(pct(r.sets_won[0], r.sets_won[0] + r.sets_won[1]));
    wins += r.match_winner == Player::A ? 1 : 0;
    s.ufes_kept += r.ufes_kept;
    s.ufes_removed += r.ufes_removed;
  }
  const auto pm = mean_and_se(points);
  const auto gm = mean_and_se(games);
  const auto sm = mean_and_se(sets);
  s.pct_points_won_A = pm.mean;
  s.se_points = pm.se;
  s.pct_games_won_A = gm.mean;
  s.se_games = gm.se;
  s.pct_sets_won_A = sm.mean;
  s.se_sets = sm.se;
  const double p_hat = static_cast<double>(wins) / static_cast<double>(results.size());
  s.pct_matches_won_A = 100.0 * p_hat;
  s.se_matches = binomial_se_pct(p_hat, results.size());
  return s;
}

SimulationSummary run_simulation(const SimulationConfig& config, const ServePoolSet& pools,
                                 const TouchWinTable& table, std::vector<MatchResult>& replicates) {
  if (config.n_matches < 2) throw UsageError("run_simulation needs at least two matches");
  config.format.validate();
  replicates.assign(config.n_matches, MatchResult{});

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    while (true) {
      const auto i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= config.n_matches) return;
      try {
        auto rng = RandomStream::for_replicate(config.seed, i);
        replicates[i] = simulate_match(config, pools, table, rng, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.n_matches);
        return;
      }
    }
  };

  const auto threads = std::max(1u, std::min<unsigned>(config.executors, static_cast<unsigned>(config.n_matches)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(replicates, config.scenario);
}

SimulationSummary run_simulation(const SimulationConfig& config, const ServePoolSet& pools,
                                 const TouchWinTable& table) {
  std::vector<MatchResult> replicates;
  return run_simulation(config, pools, table, replicates);
}

ScenarioComparison compare_scenarios(std::span<const SimulationConfig> configs, const ServePoolSet& pools,
                                     const TouchWinTable& table) {
  if (configs.empty()) throw UsageError("no scenarios to compare");
  for (const auto& c : configs) {
    if (!(c.format == configs.front().format) || c.seed != configs.front().seed) {
      throw UsageError("compared scenarios must share the match format and seed");
    }
  }
  ScenarioComparison out;
  for (const auto& c : configs) out.summaries.push_back(run_simulation(c, pools, table));
  const auto quad = [](double a, double b) { return std::sqrt(a * a + b * b); };
  for (std::size_t i = 0; i < out.summaries.size(); ++i) {
    for (std::size_t j = i + 1; j < out.summaries.size(); ++j) {
      const auto& a = out.summaries[i];
      const auto& b = out.summaries[j];
      out.differences.push_back({
          i,
          j,
          b.pct_points_won_A - a.pct_points_won_A,
          b.pct_games_won_A - a.pct_games_won_A,
          b.pct_sets_won_A - a.pct_sets_won_A,
          b.pct_matches_won_A - a.pct_matches_won_A,
          quad(a.se_points, b.se_points),
          quad(a.se_games, b.se_games),
          quad(a.se_sets, b.se_sets),
          quad(a.se_matches, b.se_matches),
      });
    }
  }
  return out;
}

nlohmann::json to_json(const SimulationSummary& s) {
  return {
      {"scenario", {{"name", s.scenario.name()}, {"x", s.scenario.x()}}},
      {"n_matches", s.n_matches},
      {"pct_points_won_A", s.pct_points_won_A},
      {"pct_games_won_A", s.pct_games_won_A},
      {"pct_sets_won_A", s.pct_sets_won_A},
      {"pct_matches_won_A", s.pct_matches_won_A},
      {"se_points", s.se_points},
      {"se_games", s.se_games},
      {"se_sets", s.se_sets},
      {"se_matches", s.se_matches},
      {"ufes_kept", s.ufes_kept},
      {"ufes_removed", s.ufes_removed},
  };
}

nlohmann::json to_json(const ScenarioComparison& c) {
  auto summaries = nlohmann::json::array();
  for (const auto& s : c.summaries) summaries.push_back(to_json(s));
  auto diffs = nlohmann::json::array();
  for (const auto& d : c.differences) {
    diffs.push_back({
        {"from", c.summaries[d.from].scenario.name()},
        {"to", c.summaries[d.to].scenario.name()},
        {"d_points", d.d_points},
        {"d_games", d.d_games},
        {"d_sets", d.d_sets},
        {"d_matches", d.d_matches},
        {"se_points", d.se_points},
        {"se_games", d.se_games},
        {"se_sets", d.se_sets},
        {"se_matches", d.se_matches},
    });
  }
  return {{"summaries", std::move(summaries)}, {"differences", std::move(diffs)}};
}

std::string render_summary_table(std::span<const SimulationSummary> summaries, const std::string& player_label) {
  const auto cell = [](double value, double se) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << value << " (" << std::setprecision(2) << se << ')';
    return os.str();
  };
  std::vector<std::string> labels;
  std::size_t width = 5;
  for (const auto& s : summaries) {
    labels.push_back(player_label + " - " + s.scenario.label());
    width = std::max(width, labels.back().size());
  }
  constexpr int kCol = 16;
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width) + 2) << "Cases" << std::setw(kCol) << "Points Won"
     << std::setw(kCol) << "Games Won" << std::setw(kCol) << "Sets Won"
     << "Matches Won\n";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const auto& s = summaries[i];
    os << std::left << std::setw(static_cast<int>(width) + 2) << labels[i] << std::setw(kCol)
       << cell(s.pct_points_won_A, s.se_points) << std::setw(kCol) << cell(s.pct_games_won_A, s.se_games)
       << std::setw(kCol) << cell(s.pct_sets_won_A, s.se_sets) << cell(s.pct_matches_won_A, s.se_matches) << '\n';
  }
  return os.str();
}

std::vector<std::string> simulation_caveats(const ServePoolSet& pools, const TouchWinTable& table) {
  std::vector<std::string> out;
  bool wta = false;
  for (const PoolId id : kAllPools) {
    for (const auto& r : pools.pool(id)) wta = wta || r.tour == Tour::wta;
  }
  if (wta && table == default_table()) {
    out.push_back("counterfactual probabilities were estimated on ATP serves and are applied here to WTA serves");
  }
  for (const auto& w : table.warnings()) out.push_back("touch table: " + w);
  return out;
}

}  // namespace unforced

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "unforced/analytics.hpp"
#include "unforced/counterfactual.hpp"
#include "unforced/csv.hpp"
#include "unforced/error.hpp"
#include "unforced/ingest.hpp"
#include "unforced/manifest.hpp"
#include "unforced/record_io.hpp"
#include "unforced/serve_pools.hpp"
#include "unforced/simulator.hpp"

namespace unforced::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kDataDirEnv = "UNFORCED_DATA_DIR";

/// Relative inputs missing from the working directory are looked up under
/// $UNFORCED_DATA_DIR.
fs::path resolve_input(const std::string& text) {
  fs::path p(text);
  if (fs::exists(p) || p.is_absolute()) return p;
  if (const char* dir = std::getenv(kDataDirEnv); dir && *dir) {
    auto candidate = fs::path(dir) / p;
    if (fs::exists(candidate)) return candidate;
  }
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw DataError(path.string() + ": write failed");
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(dir.string() + ": cannot create directory: " + ec.message());
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

TourFilter parse_tour_filter(const std::string& text) {
  if (text.empty() || text == "all" || text == "ALL") return std::nullopt;
  auto t = parse_tour(text);
  if (!t || *t == Tour::unknown) throw UsageError("tour must be ATP, WTA or all, got \"" + text + "\"");
  return t;
}

RunManifest make_manifest(std::string command, nlohmann::json config, std::optional<std::uint64_t> seed,
                          const std::vector<fs::path>& datasets) {
  RunManifest m;
  m.command = std::move(command);
  m.config = std::move(config);
  m.seed = seed;
  for (const auto& d : datasets) m.datasets.push_back({d.string(), sha256_file(d)});
  m.tool_version = tool_version();
  m.timestamp = utc_timestamp();
  return m;
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  std::vector<std::string> inputs;
  std::vector<std::string> matches_files;
  std::string output;
  std::string tour;
};

int cmd_ingest(const IngestOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.inputs.empty()) throw UsageError("ingest needs at least one points file");
  std::optional<Tour> tour_override;
  if (!opt.tour.empty()) {
    tour_override = parse_tour(opt.tour);
    if (!tour_override) throw UsageError("unknown tour \"" + opt.tour + "\"");
  }

  PlayerDirectory directory;
  std::vector<fs::path> fingerprinted;
  for (const auto& m : opt.matches_files) {
    const auto path = resolve_input(m);
    directory.merge(load_matches_file(path));
    fingerprinted.push_back(path);
  }

  IngestReport report;
  std::vector<ServeRecord> records;
  std::map<std::pair<std::string, int>, std::string> origin;
  for (const auto& input : opt.inputs) {
    const auto path = resolve_input(input);
    fingerprinted.push_back(path);
    auto rows = parse_points_file(path, directory.empty() ? nullptr : &directory);
    for (const auto& row : rows) {
      auto [it, inserted] = origin.emplace(std::make_pair(row.match_id, row.point_index), path.string());
      if (!inserted) {
        throw DataError("duplicate point " + row.match_id + " #" + std::to_string(row.point_index) + " in " +
                        path.string() + " (first seen in " + it->second + ")");
      }
    }
    auto [clean, clean_report] = clean_rows(std::move(rows));
    auto [serves, explode_report] = explode_to_serves(clean, tour_override);
    report += clean_report;
    report += explode_report;
    records.insert(records.end(), std::make_move_iterator(serves.begin()), std::make_move_iterator(serves.end()));
  }

  const fs::path output(opt.output);
  save_serve_records(output, records);
  auto manifest = make_manifest("ingest",
                                {{"inputs", opt.inputs},
                                 {"matches", opt.matches_files},
                                 {"output", opt.output},
                                 {"tour", opt.tour.empty() ? "from match_id" : opt.tour}},
                                std::nullopt, fingerprinted);
  auto manifest_json = to_json(manifest);
  manifest_json["report"] = to_json(report);
  write_json(fs::path(output.string() + ".manifest.json"), manifest_json);

  out << to_json(report).dump(2) << '\n';
  if (report.rows_dropped_notation_error > 0) {
    err << "warning: dropped " << report.rows_dropped_notation_error << " rows with undecodable notation\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------- players

struct PlayersOptions {
  std::string records;
  std::string tour;
};

void print_players(const std::vector<ServeRecord>& records, TourFilter tour, std::ostream& out) {
  auto profiles = player_profiles(records, tour);
  std::sort(profiles.begin(), profiles.end(),
            [](const auto& a, const auto& b) { return a.player_id < b.player_id; });
  for (const auto& p : profiles) out << p.player_id << '\t' << p.matches_played << '\n';
}

int cmd_players(const PlayersOptions& opt, std::ostream& out) {
  const auto records = load_serve_records(resolve_input(opt.records));
  print_players(records, parse_tour_filter(opt.tour), out);
  return kSuccess;
}

// ---------------------------------------------------------------- stats

struct StatsOptions {
  std::string records;
  std::string tour;
  std::size_t min_matches = 10;
  std::size_t top = 5;
  int max_touch = 13;
  double bin_width = 0.5;
  std::string out_dir = "stats";
};

int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.min_matches < 1) throw UsageError("--min-matches must be at least 1");
  const auto records_path = resolve_input(opt.records);
  const auto records = load_serve_records(records_path);
  const auto tour = parse_tour_filter(opt.tour);
  const fs::path dir(opt.out_dir);
  ensure_dir(dir);

  const auto profiles = player_profiles(records, tour);
  std::vector<PlayerUfeProfile> qualified;
  for (const auto& p : profiles) {
    if (p.matches_played >= opt.min_matches) qualified.push_back(p);
  }
  if (qualified.empty()) err << "warning: no players with at least " << opt.min_matches << " matches after filtering\n";

  {
    std::ostringstream os;
    csv::write_row(os, {"player_id", "matches_played", "ball_contacts", "unforced_errors", "ufe_rate"});
    for (const auto& p : profiles) {
      csv::write_row(os, {p.player_id, std::to_string(p.matches_played), std::to_string(p.ball_contacts),
                          std::to_string(p.unforced_errors), full(p.ufe_rate)});
    }
    write_text(dir / "profiles.csv", os.str());
  }

  const auto rankings = rate_rankings(profiles, opt.min_matches, opt.top);
  {
    std::ostringstream os;
    csv::write_row(os, {"rank", "low_player", "low_rate_pct", "high_player", "high_rate_pct"});
    const auto rows = std::max(rankings.lowest.size(), rankings.highest.size());
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<std::string> row{std::to_string(i + 1)};
      for (const auto* list : {&rankings.lowest, &rankings.highest}) {
        if (i < list->size()) {
          row.push_back((*list)[i].player_id);
          row.push_back(fixed((*list)[i].ufe_rate * 100.0, 1));
        } else {
          row.insert(row.end(), {"", ""});
        }
      }
      csv::write_row(os, row);
    }
    write_text(dir / "rankings.csv", os.str());
  }

  const auto server_curve = ufe_rate_by_touch(records, tour, Role::server, opt.max_touch);
  const auto receiver_curve = ufe_rate_by_touch(records, tour, Role::receiver, opt.max_touch);
  {
    std::ostringstream os;
    csv::write_row(os, {"role", "touch", "rallies_reaching", "unforced_errors", "rate"});
    for (const auto& [role, curve] : {std::pair{"server", &server_curve}, std::pair{"receiver", &receiver_curve}}) {
      for (const auto& pt : *curve) {
        csv::write_row(os, {role, std::to_string(pt.touch), std::to_string(pt.rallies_reaching),
                            std::to_string(pt.unforced_errors), full(pt.rate)});
      }
    }
    write_text(dir / "touch_curve.csv", os.str());
  }

  const auto years = ufe_rate_by_year(records, tour);
  {
    std::ostringstream os;
    csv::write_row(os, {"year", "ball_contacts", "unforced_errors", "rate"});
    for (const auto& y : years) {
      csv::write_row(os, {std::to_string(y.year), std::to_string(y.ball_contacts), std::to_string(y.unforced_errors),
                          full(y.rate)});
    }
    write_text(dir / "year_series.csv", os.str());
  }

  const auto histogram = rate_histogram(qualified, opt.bin_width, 20.0);
  {
    std::ostringstream os;
    csv::write_row(os, {"lower_pct", "upper_pct", "count"});
    for (const auto& b : histogram) {
      csv::write_row(os, {full(b.lower_pct), full(b.upper_pct), std::to_string(b.count)});
    }
    write_text(dir / "histogram.csv", os.str());
  }

  const auto breakdown = termination_breakdown(records, tour);
  const auto tour_rate = tour_ufe_rate(records, tour);
  nlohmann::json summary = {
      {"tour", opt.tour.empty() ? "all" : opt.tour},
      {"players", profiles.size()},
      {"players_with_min_matches", qualified.size()},
      {"ball_contacts", tour_rate.ball_contacts},
      {"unforced_errors", tour_rate.unforced_errors},
      {"ufe_rate", tour_rate.rate},
      {"decisive_serves", breakdown.decisive_serves},
      {"ufe_termination_share", breakdown.share(TerminalKind::unforced_error)},
      {"year_trend_kendall_tau", kendall_tau(years)},
  };
  auto shares = nlohmann::json::object();
  for (const auto& [kind, count] : breakdown.counts) shares[std::string(to_string(kind))] = breakdown.share(kind);
  summary["termination_shares"] = std::move(shares);
  write_json(dir / "stats.json", summary);

  const auto manifest = make_manifest("stats",
                                      {{"records", opt.records},
                                       {"tour", opt.tour.empty() ? "all" : opt.tour},
                                       {"min_matches", opt.min_matches},
                                       {"top", opt.top},
                                       {"max_touch", opt.max_touch},
                                       {"bin_width_pct", opt.bin_width},
                                       {"out_dir", opt.out_dir}},
                                      std::nullopt, {records_path});
  write_json(dir / "manifest.json", to_json(manifest));
  out << summary.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string records;
  std::string player_a;
  std::string player_b;
  std::vector<std::string> scenarios{"historic"};
  double x = 0.1;
  std::size_t n = 3000;
  std::uint64_t seed = 42;
  int best_of = 5;
  bool no_ad = false;
  bool no_final_set_tiebreak = false;
  int tiebreak_at = 6;
  std::string first_server = "alternate";
  std::string scope = "head-to-head";
  bool fallback_versus_field = false;
  std::string table1;
  unsigned threads = 1;
  std::string out_dir;
  bool list_players = false;
  bool json = false;
};

FirstServerPolicy parse_first_server(const std::string& text) {
  if (text == "alternate") return FirstServerPolicy::alternate;
  if (text == "A" || text == "a") return FirstServerPolicy::fixed_A;
  if (text == "B" || text == "b") return FirstServerPolicy::fixed_B;
  if (text == "random") return FirstServerPolicy::random;
  throw UsageError("--first-server must be alternate, A, B or random");
}

PoolScope parse_scope(const std::string& text) {
  if (text == "head-to-head" || text == "head_to_head") return PoolScope::head_to_head;
  if (text == "versus-field" || text == "versus_field") return PoolScope::versus_field;
  throw UsageError("--scope must be head-to-head or versus-field");
}

Scenario parse_scenario(const std::string& text, double x) {
  if (text == "historic") return Scenario::historic();
  if (text == "eliminate") return Scenario::eliminate();
  if (text == "reduce") return Scenario::reduce(x);
  throw UsageError("--scenario must be historic, reduce or eliminate");
}

std::string require_player(const std::vector<ServeRecord>& records, const std::string& name) {
  for (const auto& r : records) {
    if (same_player(r.server_id, name)) return r.server_id;
    if (same_player(r.receiver_id, name)) return r.receiver_id;
  }
  throw DataError("unknown player \"" + name + "\"; run `unforced list-players` to see charted names");
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const auto records_path = resolve_input(opt.records);
  const auto records = load_serve_records(records_path);
  if (opt.list_players) {
    print_players(records, std::nullopt, out);
    return kSuccess;
  }
  if (opt.player_a.empty() || opt.player_b.empty()) throw UsageError("simulate needs --a and --b");
  if (opt.n < 2) throw UsageError("--n must be at least 2");

  const auto a = require_player(records, opt.player_a);
  const auto b = require_player(records, opt.player_b);

  MatchFormat format;
  format.best_of = opt.best_of;
  format.ad_scoring = !opt.no_ad;
  format.final_set_tiebreak = !opt.no_final_set_tiebreak;
  format.tiebreak_trigger_games = opt.tiebreak_at;
  format.validate();

  std::vector<fs::path> fingerprinted{records_path};
  std::optional<TouchWinTable> custom;
  if (!opt.table1.empty()) {
    const auto path = resolve_input(opt.table1);
    custom = load_table_file(path);
    fingerprinted.push_back(path);
  }
  const TouchWinTable table = custom ? *custom : default_table();

  auto scope = parse_scope(opt.scope);
  std::optional<ServePoolSet> pools;
  try {
    pools.emplace(build_pools(records, a, b, scope));
  } catch (const EmptyPoolError& e) {
    if (!opt.fallback_versus_field || scope == PoolScope::versus_field) throw;
    err << "note: " << e.what() << "; falling back to versus-field pools\n";
    scope = PoolScope::versus_field;
    pools.emplace(build_pools(records, a, b, scope));
  }

  std::vector<SimulationConfig> configs;
  for (const auto& s : opt.scenarios) {
    SimulationConfig c;
    c.n_matches = opt.n;
    c.seed = opt.seed;
    c.scenario = parse_scenario(s, opt.x);
    c.format = format;
    c.first_server = parse_first_server(opt.first_server);
    c.pool_scope = scope;
    c.executors = std::max(1u, opt.threads);
    configs.push_back(c);
  }
  const auto comparison = compare_scenarios(configs, *pools, table);
  const auto caveats = simulation_caveats(*pools, table);

  auto result = to_json(comparison);
  result["player_a"] = a;
  result["player_b"] = b;
  result["pools"] = pool_summary_json(*pools);
  result["caveats"] = caveats;
  const auto text = render_summary_table(comparison.summaries, a);

  nlohmann::json config = {
      {"records", opt.records},
      {"player_a", a},
      {"player_b", b},
      {"scenarios", nlohmann::json::array()},
      {"n_matches", opt.n},
      {"seed", opt.seed},
      {"format",
       {{"best_of", format.best_of},
        {"ad_scoring", format.ad_scoring},
        {"tiebreak_trigger_games", format.tiebreak_trigger_games},
        {"tiebreak_target_points", format.tiebreak_target_points},
        {"final_set_tiebreak", format.final_set_tiebreak}}},
      {"first_server", to_string(configs.front().first_server)},
      {"pool_scope", to_string(scope)},
      {"table1", opt.table1.empty() ? nlohmann::json("default") : nlohmann::json(opt.table1)},
      {"table1_entries", table.entries()},
  };
  for (const auto& c : configs) config["scenarios"].push_back({{"name", c.scenario.name()}, {"x", c.scenario.x()}});

  if (!opt.out_dir.empty()) {
    const fs::path dir(opt.out_dir);
    ensure_dir(dir);
    write_json(dir / "summary.json", result);
    write_text(dir / "summary.txt", text);
    write_json(dir / "manifest.json", to_json(make_manifest("simulate", config, opt.seed, fingerprinted)));
  }
  for (const auto& c : caveats) err << "caveat: " << c << '\n';
  if (opt.json) {
    out << result.dump(2) << '\n';
  } else {
    out << text;
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantify the impact of unforced errors in tennis by bootstrap match simulation"};
  app.set_config("--config", "", "Read options from an INI/TOML key = value file");
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Normalize Match Charting Project points files into serve records");
  ingest_cmd->add_option("inputs", ingest.inputs, "Points CSV files")->required();
  ingest_cmd->add_option("-o,--output", ingest.output, "Serve-record output (.csv or .json)")->required();
  ingest_cmd->add_option("--matches", ingest.matches_files, "charting-*-matches.csv files with player names");
  ingest_cmd->add_option("--tour", ingest.tour, "Override the tour (ATP or WTA) instead of reading match ids");

  PlayersOptions players;
  auto* players_cmd = app.add_subcommand("list-players", "List player names and charted match counts");
  players_cmd->add_option("records", players.records, "Serve-record file")->required();
  players_cmd->add_option("--tour", players.tour, "ATP, WTA or all");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Unforced-error rates, rankings, touch curves and year trends");
  stats_cmd->add_option("records", stats.records, "Serve-record file")->required();
  stats_cmd->add_option("--tour", stats.tour, "ATP, WTA or all");
  stats_cmd->add_option("--min-matches", stats.min_matches, "Minimum charted matches for rankings/histogram")
      ->capture_default_str();
  stats_cmd->add_option("-k,--top", stats.top, "Players in each ranking list")->capture_default_str();
  stats_cmd->add_option("--max-touch", stats.max_touch, "Last touch in the touch curves")->capture_default_str();
  stats_cmd->add_option("--bin-width", stats.bin_width, "Histogram bin width in percent")->capture_default_str();
  stats_cmd->add_option("--out-dir", stats.out_dir, "Output directory")->capture_default_str();

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Bootstrap-simulate matches between two players");
  sim_cmd->add_option("records", sim.records, "Serve-record file")->required();
  sim_cmd->add_option("--a", sim.player_a, "Player A (errors studied), case-insensitive exact name");
  sim_cmd->add_option("--b", sim.player_b, "Player B");
  sim_cmd->add_option("--scenario", sim.scenarios, "historic, reduce, eliminate (repeatable)")
      ->delimiter(',')
      ->capture_default_str();
  sim_cmd->add_option("--x", sim.x, "Fraction of A's unforced errors removed by `reduce`")->capture_default_str();
  sim_cmd->add_option("-n,--n", sim.n, "Simulated matches per scenario")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--best-of", sim.best_of, "Sets per match (3 or 5)")->capture_default_str();
  sim_cmd->add_flag("--no-ad", sim.no_ad, "Deciding point at deuce");
  sim_cmd->add_flag("--no-final-set-tiebreak", sim.no_final_set_tiebreak, "Advantage final set");
  sim_cmd->add_option("--tiebreak-at", sim.tiebreak_at, "Games-all that triggers a tiebreak")->capture_default_str();
  sim_cmd->add_option("--first-server", sim.first_server, "alternate, A, B or random")->capture_default_str();
  sim_cmd->add_option("--scope", sim.scope, "head-to-head or versus-field")->capture_default_str();
  sim_cmd->add_flag("--fallback-versus-field", sim.fallback_versus_field,
                    "Use versus-field pools when head-to-head pools are empty");
  sim_cmd->add_option("--table1", sim.table1, "Touch/probability table overriding the built-in one");
  sim_cmd->add_option("--threads", sim.threads, "Replicate worker threads")->capture_default_str();
  sim_cmd->add_option("--out-dir", sim.out_dir, "Write summary.json, summary.txt and manifest.json here");
  sim_cmd->add_flag("--list-players", sim.list_players, "List charted player names and exit");
  sim_cmd->add_flag("--json", sim.json, "Print JSON instead of the text table");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(ingest, out, err);
    if (players_cmd->parsed()) return cmd_players(players, out);
    if (stats_cmd->parsed()) return cmd_stats(stats, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.category()) {
      case ErrorCategory::usage: return kUsageError;
      case ErrorCategory::data: return kDataError;
      case ErrorCategory::runtime: return kRuntimeError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace unforced::cli

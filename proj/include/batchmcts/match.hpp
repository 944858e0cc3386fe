#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batchmcts/evaluation.hpp"
#include "batchmcts/hex.hpp"
#include "batchmcts/search_config.hpp"
#include "batchmcts/search_stats.hpp"

namespace batchmcts {

struct EvaluatorSpec {
  std::string kind = "heuristic";  // heuristic | uniform | remote
  std::string address;             // remote over TCP: host:port (or $BATCHMCTS_EVAL_ADDR)
  std::vector<std::string> command;  // remote over a child's stdio
  std::optional<LatencyModel> latency;
};

struct EngineSpec {
  std::string label;
  SearchConfig search;
  EvaluatorSpec evaluator;
};

struct GameSpec {
  std::string name = "hex";
  int size = 7;
};

struct MatchSpec {
  GameSpec game;
  EngineSpec engine_a;
  EngineSpec engine_b;
  int num_games = 400;
  int opening_plies = 2;
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

// Sums over every move an engine made during a match.
struct EngineAggregate {
  std::int64_t moves = 0;
  std::int64_t forwards = 0;
  std::int64_t batches = 0;
  std::int64_t descents = 0;
  std::int64_t nodes = 0;
  double simulated_ms = 0.0;

  void add(const SearchStats& s);
  void add(const EngineAggregate& other);
  double mean_nodes() const;
  double inferences_per_batch() const;
  double descents_per_forward() const;
  double mean_move_ms() const;
};

struct MatchReport {
  std::string label;
  SearchConfig config_a;
  int num_games = 0;
  int wins_a = 0;
  int wins_b = 0;
  int draws = 0;
  double winrate_a = 0.0;  // draws count half
  double std_error = 0.0;  // sqrt(w (1 - w) / n)
  EngineAggregate a;
  EngineAggregate b;
};

struct GameRecord {
  bool a_first = true;
  std::optional<Player> winner;
  std::string moves;  // full game in move notation
  EngineAggregate a;
  EngineAggregate b;
};

class MatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::unique_ptr<Evaluator<HexPosition>> make_evaluator(const EvaluatorSpec& spec, const std::string& game);

// Opening moves shared by games 2k and 2k+1.
std::vector<Move> random_opening(const MatchSpec& spec, int game_index);

// Plays one game. Engine A moves first in even-numbered games.
GameRecord play_game(const MatchSpec& spec, int game_index);

// Games run concurrently (OpenMP); aggregation happens in game order, so
// the report is identical to run_match_serial().
MatchReport run_match(const MatchSpec& spec);
MatchReport run_match_serial(const MatchSpec& spec);

MatchReport summarize(const MatchSpec& spec, std::span<const GameRecord> games);

// Sets one SearchConfig field by its config-file name. Throws ConfigError
// for unknown names or unparsable values.
void apply_parameter(SearchConfig& config, std::string_view name, std::string_view value);
bool is_search_parameter(std::string_view name);

// One match per value, engine A modified, shared seeds.
std::vector<MatchReport> sweep(const MatchSpec& base, std::string_view parameter,
                               std::span<const std::string> values);

enum class TableFormat { kCsv, kMarkdown };

// Columns: config, vl, B, batch, nodes, inference, winrate, stderr.
std::string report_table(std::span<const MatchReport> reports, TableFormat format);

}  // namespace batchmcts

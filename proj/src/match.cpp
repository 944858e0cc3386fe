#include "batchmcts/match.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include <omp.h>

#include "batchmcts/engine.hpp"
#include "batchmcts/errors.hpp"
#include "batchmcts/hex_heuristic.hpp"
#include "batchmcts/wire_client.hpp"

namespace batchmcts {

void MatchSpec::validate() const {
  if (game.name != "hex") throw ConfigError("matches are played on hex only, got '" + game.name + "'");
  if (game.size < 2 || game.size > HexPosition::kMaxSize) throw ConfigError("hex size out of range");
  if (num_games <= 0 || num_games % 2 != 0) throw ConfigError("num_games must be positive and even");
  if (opening_plies < 0 || opening_plies >= game.size * game.size / 2) {
    throw ConfigError("opening_plies out of range");
  }
  engine_a.search.validate();
  engine_b.search.validate();
  for (const EvaluatorSpec* e : {&engine_a.evaluator, &engine_b.evaluator}) {
    if (e->kind != "heuristic" && e->kind != "uniform" && e->kind != "remote") {
      throw ConfigError("unknown evaluator kind '" + e->kind + "'");
    }
  }
}

void EngineAggregate::add(const SearchStats& s) {
  moves += 1;
  forwards += s.forwards;
  batches += s.batches;
  descents += s.descents;
  nodes += s.final_nodes;
  simulated_ms += s.simulated_ms;
}

void EngineAggregate::add(const EngineAggregate& o) {
  moves += o.moves;
  forwards += o.forwards;
  batches += o.batches;
  descents += o.descents;
  nodes += o.nodes;
  simulated_ms += o.simulated_ms;
}

double EngineAggregate::mean_nodes() const { return moves ? static_cast<double>(nodes) / moves : 0.0; }
double EngineAggregate::inferences_per_batch() const {
  return batches ? static_cast<double>(forwards) / batches : 0.0;
}
double EngineAggregate::descents_per_forward() const {
  return forwards ? static_cast<double>(descents) / forwards : 0.0;
}
double EngineAggregate::mean_move_ms() const { return moves ? simulated_ms / moves : 0.0; }

std::unique_ptr<Evaluator<HexPosition>> make_evaluator(const EvaluatorSpec& spec, const std::string& game) {
  if (spec.kind == "heuristic") return std::make_unique<HexHeuristicEvaluator>();
  if (spec.kind == "uniform") return std::make_unique<UniformEvaluator<HexPosition>>();
  if (spec.kind == "remote") {
    if (!spec.command.empty()) {
      return std::make_unique<RemoteEvaluator<HexPosition>>(spawn_process(spec.command), game);
    }
    const auto address = resolve_eval_address(spec.address);
    if (!address) throw ConfigError("remote evaluator needs an address or $" + std::string(kEvalAddressEnv));
    return std::make_unique<RemoteEvaluator<HexPosition>>(connect_tcp(*address), game);
  }
  throw ConfigError("unknown evaluator kind '" + spec.kind + "'");
}

std::vector<Move> random_opening(const MatchSpec& spec, int game_index) {
  std::uint64_t state = hash_combine(spec.seed, static_cast<std::uint64_t>(game_index - game_index % 2));
  HexPosition pos(spec.game.size);
  std::vector<Move> opening;
  for (int i = 0; i < spec.opening_plies && !pos.is_terminal(); ++i) {
    const std::vector<Move> moves = pos.legal_moves();
    state = splitmix64(state);
    const Move m = moves[state % moves.size()];
    opening.push_back(m);
    pos = pos.play(m);
  }
  return opening;
}

GameRecord play_game(const MatchSpec& spec, int game_index) {
  GameRecord record;
  record.a_first = game_index % 2 == 0;
  HexPosition pos(spec.game.size);
  for (Move m : random_opening(spec, game_index)) pos = pos.play(m);

  auto eval_a = make_evaluator(spec.engine_a.evaluator, pos.name());
  auto eval_b = make_evaluator(spec.engine_b.evaluator, pos.name());
  Engine<HexPosition> engine_a(spec.engine_a.search, *eval_a, spec.engine_a.evaluator.latency);
  Engine<HexPosition> engine_b(spec.engine_b.search, *eval_b, spec.engine_b.evaluator.latency);

  while (!pos.is_terminal()) {
    const bool a_to_move = (pos.to_move() == Player::kFirst) == record.a_first;
    Engine<HexPosition>& engine = a_to_move ? engine_a : engine_b;
    Move m;
    try {
      m = engine.choose_move(pos);
    } catch (const std::exception& e) {
      throw MatchError("game " + std::to_string(game_index) + ", move " + std::to_string(pos.ply() + 1) +
                       " (engine " + (a_to_move ? "a" : "b") + "): " + e.what());
    }
    (a_to_move ? record.a : record.b).add(engine.last_stats());
    pos = pos.play(m);
  }
  record.winner = pos.winner();
  record.moves = pos.history_string();
  return record;
}

MatchReport summarize(const MatchSpec& spec, std::span<const GameRecord> games) {
  MatchReport r;
  r.label = spec.engine_a.label;
  r.config_a = spec.engine_a.search;
  r.num_games = static_cast<int>(games.size());
  for (const GameRecord& g : games) {
    if (!g.winner) {
      ++r.draws;
    } else if ((*g.winner == Player::kFirst) == g.a_first) {
      ++r.wins_a;
    } else {
      ++r.wins_b;
    }
    r.a.add(g.a);
    r.b.add(g.b);
  }
  if (r.num_games > 0) {
    r.winrate_a = (r.wins_a + 0.5 * r.draws) / r.num_games;
    r.std_error = std::sqrt(r.winrate_a * (1.0 - r.winrate_a) / r.num_games);
  }
  return r;
}

MatchReport run_match_serial(const MatchSpec& spec) {
  spec.validate();
  std::vector<GameRecord> games;
  games.reserve(static_cast<std::size_t>(spec.num_games));
  for (int i = 0; i < spec.num_games; ++i) games.push_back(play_game(spec, i));
  return summarize(spec, games);
}

MatchReport run_match(const MatchSpec& spec) {
  spec.validate();
  std::vector<GameRecord> games(static_cast<std::size_t>(spec.num_games));
  std::vector<std::exception_ptr> errors(games.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < spec.num_games; ++i) {
    try {
      games[i] = play_game(spec, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return summarize(spec, games);
}

namespace {

int parse_int(std::string_view name, std::string_view text) {
  int v = 0;
  std::istringstream in{std::string(text)};
  if (!(in >> v) || !in.eof()) throw ConfigError(std::string(name) + ": expected an integer, got '" + std::string(text) + "'");
  return v;
}

double parse_real(std::string_view name, std::string_view text) {
  double v = 0;
  std::istringstream in{std::string(text)};
  if (!(in >> v) || !in.eof()) throw ConfigError(std::string(name) + ": expected a number, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view name, std::string_view text) {
  std::uint64_t v = 0;
  std::istringstream in{std::string(text)};
  if (text.empty() || text[0] == '-' || !(in >> v) || !in.eof()) {
    throw ConfigError(std::string(name) + ": expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view name, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(std::string(name) + ": expected true/false, got '" + std::string(text) + "'");
}

constexpr std::string_view kParameters[] = {
    "c",          "fpu_mode",     "fpu_constant",     "penalty_mode", "vl",       "vll",
    "batch_size", "num_batches",  "max_descents",     "last_iteration_u", "second_move",
    "baseline",   "plus_one_under_sqrt", "rng_seed"};

}  // namespace

bool is_search_parameter(std::string_view name) {
  for (std::string_view p : kParameters) {
    if (p == name) return true;
  }
  return false;
}

void apply_parameter(SearchConfig& cfg, std::string_view name, std::string_view value) {
  if (name == "c") cfg.c = parse_real(name, value);
  else if (name == "fpu_mode") cfg.fpu.kind = parse_fpu_kind(value);
  else if (name == "fpu_constant") cfg.fpu.constant = parse_real(name, value);
  else if (name == "penalty_mode") cfg.penalty = parse_penalty_mode(value);
  else if (name == "vl") cfg.vl = parse_int(name, value);
  else if (name == "vll") cfg.vll = parse_int(name, value);
  else if (name == "batch_size") cfg.batch_size = parse_int(name, value);
  else if (name == "num_batches") cfg.num_batches = parse_int(name, value);
  else if (name == "max_descents") cfg.max_descents = parse_int(name, value);
  else if (name == "last_iteration_u") cfg.last_iteration_u = parse_int(name, value);
  else if (name == "second_move") cfg.second_move = parse_bool(name, value);
  else if (name == "baseline") cfg.baseline = parse_baseline(value);
  else if (name == "plus_one_under_sqrt") cfg.plus_one_under_sqrt = parse_bool(name, value);
  else if (name == "rng_seed") cfg.rng_seed = parse_u64(name, value);
  else throw ConfigError("unknown search parameter '" + std::string(name) + "'");
}

std::vector<MatchReport> sweep(const MatchSpec& base, std::string_view parameter,
                               std::span<const std::string> values) {
  if (!is_search_parameter(parameter)) {
    throw ConfigError("unknown search parameter '" + std::string(parameter) + "'");
  }
  // Build and validate every variant before playing any game.
  std::vector<MatchSpec> specs;
  for (const std::string& v : values) {
    MatchSpec spec = base;
    apply_parameter(spec.engine_a.search, parameter, v);
    spec.engine_a.label = (base.engine_a.label.empty() ? "" : base.engine_a.label + " ") +
                          std::string(parameter) + "=" + v;
    spec.validate();
    specs.push_back(std::move(spec));
  }
  std::vector<MatchReport> reports;
  for (const MatchSpec& spec : specs) reports.push_back(run_match(spec));
  return reports;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string report_table(std::span<const MatchReport> reports, TableFormat format) {
  static const std::vector<std::string> kHeader = {"config", "vl",    "B",       "batch",
                                                   "nodes",  "inference", "winrate", "stderr"};
  std::vector<std::vector<std::string>> rows;
  rows.push_back(kHeader);
  for (const MatchReport& r : reports) {
    const bool sequential = r.config_a.baseline != Baseline::kBatchTree;
    rows.push_back({r.label, std::to_string(r.config_a.vl),
                    std::to_string(sequential ? r.config_a.budget() : r.config_a.num_batches),
                    std::to_string(sequential ? 1 : r.config_a.batch_size), fixed(r.a.mean_nodes(), 2),
                    fixed(r.a.inferences_per_batch(), 2), fixed(r.winrate_a, 4), fixed(r.std_error, 4)});
  }
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (format == TableFormat::kCsv) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? "," : "") + csv_field(rows[i][j]);
      out += '\n';
    } else {
      out += '|';
      for (const std::string& cell : rows[i]) out += ' ' + cell + " |";
      out += '\n';
      if (i == 0) {
        out += '|';
        for (std::size_t j = 0; j < rows[i].size(); ++j) out += j == 0 ? " --- |" : " ---: |";
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace batchmcts

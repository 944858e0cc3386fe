#include "batchmcts/config.hpp"

#include <fstream>
#include <set>

#include "batchmcts/errors.hpp"

namespace batchmcts {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown field '" + key + "' in " + where);
  }
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

const std::set<std::string> kSearchFields = {
    "c",          "fpu_mode",    "fpu_constant",   "penalty_mode", "vl",
    "vll",        "batch_size",  "num_batches",    "max_descents", "last_iteration_u",
    "second_move", "baseline",   "plus_one_under_sqrt", "rng_seed"};

}  // namespace

SearchConfig parse_search_config(const json& j) {
  SearchConfig cfg;
  cfg.c = get(j, "c", cfg.c);
  if (j.contains("fpu_mode")) cfg.fpu.kind = parse_fpu_kind(get<std::string>(j, "fpu_mode", ""));
  cfg.fpu.constant = get(j, "fpu_constant", cfg.fpu.constant);
  if (j.contains("penalty_mode")) cfg.penalty = parse_penalty_mode(get<std::string>(j, "penalty_mode", ""));
  cfg.vl = get(j, "vl", cfg.vl);
  cfg.vll = get(j, "vll", cfg.vll);
  cfg.batch_size = get(j, "batch_size", cfg.batch_size);
  cfg.num_batches = get(j, "num_batches", cfg.num_batches);
  cfg.max_descents = get(j, "max_descents", cfg.max_descents);
  cfg.last_iteration_u = get(j, "last_iteration_u", cfg.last_iteration_u);
  cfg.second_move = get(j, "second_move", cfg.second_move);
  if (j.contains("baseline")) cfg.baseline = parse_baseline(get<std::string>(j, "baseline", ""));
  cfg.plus_one_under_sqrt = get(j, "plus_one_under_sqrt", cfg.plus_one_under_sqrt);
  cfg.rng_seed = get(j, "rng_seed", cfg.rng_seed);
  cfg.validate();
  return cfg;
}

EngineSpec parse_engine_spec(const json& j) {
  std::set<std::string> allowed = kSearchFields;
  allowed.insert({"label", "evaluator"});
  reject_unknown(j, allowed, "engine");
  EngineSpec spec;
  spec.label = get<std::string>(j, "label", "");
  json search = j;
  search.erase("label");
  search.erase("evaluator");
  spec.search = parse_search_config(search);
  if (j.contains("evaluator")) {
    const json& e = j["evaluator"];
    reject_unknown(e, {"kind", "address", "command", "latency_fixed_ms", "latency_per_state_ms"}, "evaluator");
    spec.evaluator.kind = get<std::string>(e, "kind", spec.evaluator.kind);
    spec.evaluator.address = get<std::string>(e, "address", "");
    spec.evaluator.command = get<std::vector<std::string>>(e, "command", {});
    if (e.contains("latency_fixed_ms") || e.contains("latency_per_state_ms")) {
      LatencyModel m;
      m.fixed_ms = get(e, "latency_fixed_ms", m.fixed_ms);
      m.per_state_ms = get(e, "latency_per_state_ms", m.per_state_ms);
      if (m.fixed_ms < 0 || m.per_state_ms < 0) throw ConfigError("latency costs must be >= 0");
      spec.evaluator.latency = m;
    }
  }
  return spec;
}

MatchSpec parse_match_spec(const json& j) {
  reject_unknown(j, {"game", "engine_a", "engine_b", "num_games", "opening_plies", "seed"}, "match");
  MatchSpec spec;
  if (j.contains("game")) {
    const json& g = j["game"];
    reject_unknown(g, {"name", "size"}, "game");
    spec.game.name = get<std::string>(g, "name", spec.game.name);
    spec.game.size = get(g, "size", spec.game.size);
  }
  if (!j.contains("engine_a") || !j.contains("engine_b")) throw ConfigError("engine_a and engine_b are required");
  spec.engine_a = parse_engine_spec(j["engine_a"]);
  spec.engine_b = parse_engine_spec(j["engine_b"]);
  spec.num_games = get(j, "num_games", spec.num_games);
  spec.opening_plies = get(j, "opening_plies", spec.opening_plies);
  spec.seed = get(j, "seed", spec.seed);
  spec.validate();
  return spec;
}

MatchSpec load_match_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
  return parse_match_spec(j);
}

json to_json(const SearchConfig& c) {
  return json{{"c", c.c},
              {"fpu_mode", std::string(to_string(c.fpu.kind))},
              {"fpu_constant", c.fpu.constant},
              {"penalty_mode", std::string(to_string(c.penalty))},
              {"vl", c.vl},
              {"vll", c.vll},
              {"batch_size", c.batch_size},
              {"num_batches", c.num_batches},
              {"max_descents", c.max_descents},
              {"last_iteration_u", c.last_iteration_u},
              {"second_move", c.second_move},
              {"baseline", std::string(to_string(c.baseline))},
              {"plus_one_under_sqrt", c.plus_one_under_sqrt},
              {"rng_seed", c.rng_seed}};
}

namespace {

json aggregate_json(const EngineAggregate& a) {
  return json{{"moves", a.moves},
              {"mean_nodes", a.mean_nodes()},
              {"inferences_per_batch", a.inferences_per_batch()},
              {"descents_per_forward", a.descents_per_forward()},
              {"mean_move_ms", a.mean_move_ms()}};
}

}  // namespace

json to_json(const MatchReport& r) {
  return json{{"label", r.label},     {"num_games", r.num_games}, {"wins_a", r.wins_a},
              {"wins_b", r.wins_b},   {"draws", r.draws},         {"winrate_a", r.winrate_a},
              {"stderr", r.std_error}, {"engine_a", aggregate_json(r.a)}, {"engine_b", aggregate_json(r.b)}};
}

}  // namespace batchmcts

#pragma once

#include <string>

#include "json.hpp"

#include "batchmcts/match.hpp"

namespace batchmcts {

// JSON config files. Field names follow the MatchSpec / SearchConfig field
// names; unknown fields are rejected. All functions throw ConfigError.
SearchConfig parse_search_config(const nlohmann::json& j);
EngineSpec parse_engine_spec(const nlohmann::json& j);
MatchSpec parse_match_spec(const nlohmann::json& j);
MatchSpec load_match_spec(const std::string& path);

nlohmann::json to_json(const SearchConfig& config);
nlohmann::json to_json(const MatchReport& report);

}  // namespace batchmcts

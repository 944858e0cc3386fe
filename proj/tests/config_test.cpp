#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include <unistd.h>

#include <json.hpp>

#include "batchmcts/config.hpp"
#include "batchmcts/errors.hpp"
#include "batchmcts/match.hpp"

using namespace batchmcts;
using nlohmann::json;

namespace {

json minimal_match() {
  return json{{"engine_a", {{"label", "a"}}}, {"engine_b", {{"label", "b"}}}, {"num_games", 4}};
}

std::string write_temp(const std::string& text) {
  char path[] = "/tmp/batchmcts_config_XXXXXX";
  const int fd = mkstemp(path);
  EXPECT_GE(fd, 0);
  close(fd);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Config, SearchConfigRoundTrips) {
  SearchConfig cfg;
  cfg.c = 0.35;
  cfg.fpu = FpuMode::Constant(-0.25);
  cfg.penalty = PenaltyMode::kVirtualLoss;
  cfg.vl = 3;
  cfg.vll = 2;
  cfg.batch_size = 8;
  cfg.num_batches = 12;
  cfg.max_descents = 100;
  cfg.last_iteration_u = 7;
  cfg.second_move = true;
  cfg.baseline = Baseline::kPucd;
  cfg.plus_one_under_sqrt = false;
  cfg.rng_seed = 0xFFFFFFFFFFFFFFFFull;
  const SearchConfig back = parse_search_config(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));
  EXPECT_EQ(back.rng_seed, cfg.rng_seed);
  EXPECT_EQ(back.fpu.kind, FpuKind::kConstant);
}

TEST(Config, DefaultsAreThePaperOperatingPoint) {
  const SearchConfig cfg = parse_search_config(json::object());
  EXPECT_EQ(cfg.c, 0.5);
  EXPECT_EQ(cfg.fpu.kind, FpuKind::kMu);
  EXPECT_EQ(cfg.penalty, PenaltyMode::kVirtualMean);
  EXPECT_EQ(cfg.batch_size, 32);
  EXPECT_EQ(cfg.num_batches, 32);
  EXPECT_EQ(cfg.max_descents, 500);
  EXPECT_EQ(cfg.last_iteration_u, 0);
  EXPECT_FALSE(cfg.second_move);
  EXPECT_TRUE(cfg.plus_one_under_sqrt);
  const SearchConfig seq = sequential_config(64);
  EXPECT_EQ(seq.c, 0.2);
  EXPECT_EQ(seq.budget(), 64);
  EXPECT_EQ(seq.baseline, Baseline::kSequentialTree);
}

TEST(Config, RejectsInvalidSearchFields) {
  EXPECT_THROW(parse_search_config({{"vl", 0}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"vll", 0}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"batch_size", 0}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"c", -1.0}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"last_iteration_u", -1}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"max_descents", 4}, {"batch_size", 8}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"fpu_mode", "greedy"}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"penalty_mode", "none"}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"baseline", "dag"}}), ConfigError);
  EXPECT_THROW(parse_search_config({{"vl", "two"}}), ConfigError);
}

TEST(Config, MatchSpecParses) {
  json j = minimal_match();
  j["game"] = {{"name", "hex"}, {"size", 5}};
  j["engine_a"]["fpu_mode"] = "constant";
  j["engine_a"]["evaluator"] = {{"kind", "uniform"}, {"latency_fixed_ms", 10.0}};
  j["engine_b"]["evaluator"] = {{"kind", "remote"}, {"command", {"/bin/server", "--stdio"}}};
  j["seed"] = 99;
  const MatchSpec spec = parse_match_spec(j);
  EXPECT_EQ(spec.game.size, 5);
  EXPECT_EQ(spec.engine_a.label, "a");
  EXPECT_EQ(spec.engine_a.search.fpu.kind, FpuKind::kConstant);
  EXPECT_EQ(spec.engine_a.evaluator.kind, "uniform");
  ASSERT_TRUE(spec.engine_a.evaluator.latency.has_value());
  EXPECT_EQ(spec.engine_a.evaluator.latency->fixed_ms, 10.0);
  EXPECT_EQ(spec.engine_a.evaluator.latency->per_state_ms, 0.28);
  EXPECT_EQ(spec.engine_b.evaluator.command.size(), 2u);
  EXPECT_FALSE(spec.engine_b.evaluator.latency.has_value());
  EXPECT_EQ(spec.seed, 99u);
  EXPECT_EQ(spec.opening_plies, 2);
}

TEST(Config, MatchSpecRejectsBadInput) {
  json j = minimal_match();
  j["extra"] = 1;
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j["engine_a"]["vl_typo"] = 2;
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j["num_games"] = 3;
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j["game"] = {{"name", "go"}};
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j["engine_b"]["evaluator"] = {{"kind", "neural"}};
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j["engine_b"]["evaluator"] = {{"latency_per_state_ms", -1.0}};
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j.erase("engine_b");
  EXPECT_THROW(parse_match_spec(j), ConfigError);

  j = minimal_match();
  j["opening_plies"] = 40;
  EXPECT_THROW(parse_match_spec(j), ConfigError);
}

TEST(Config, LoadFromFile) {
  const std::string good = write_temp(minimal_match().dump());
  EXPECT_EQ(load_match_spec(good).num_games, 4);
  std::remove(good.c_str());
  const std::string bad = write_temp("{ not json");
  EXPECT_THROW(load_match_spec(bad), ConfigError);
  std::remove(bad.c_str());
  EXPECT_THROW(load_match_spec("/nonexistent/config.json"), ConfigError);
}

TEST(Config, ApplyParameter) {
  SearchConfig cfg;
  apply_parameter(cfg, "vl", "3");
  apply_parameter(cfg, "c", "0.25");
  apply_parameter(cfg, "penalty_mode", "virtual_loss");
  apply_parameter(cfg, "second_move", "true");
  apply_parameter(cfg, "rng_seed", "18446744073709551615");
  EXPECT_EQ(cfg.vl, 3);
  EXPECT_EQ(cfg.c, 0.25);
  EXPECT_EQ(cfg.penalty, PenaltyMode::kVirtualLoss);
  EXPECT_TRUE(cfg.second_move);
  EXPECT_EQ(cfg.rng_seed, 18446744073709551615ull);
  EXPECT_THROW(apply_parameter(cfg, "vl", "3.5"), ConfigError);
  EXPECT_THROW(apply_parameter(cfg, "second_move", "maybe"), ConfigError);
  EXPECT_THROW(apply_parameter(cfg, "rng_seed", "-1"), ConfigError);
  EXPECT_THROW(apply_parameter(cfg, "depth", "3"), ConfigError);
  EXPECT_TRUE(is_search_parameter("last_iteration_u"));
  EXPECT_FALSE(is_search_parameter("num_games"));
}
